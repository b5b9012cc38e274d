/// First 2176 bytes of the binary fractional expansion of pi (0x243F6A88...),
/// laid out as 136 consecutive 16-byte round keys.
pub(crate) const PI_KEY_BYTES: [u8; 2176] = [
    0x24, 0x3f, 0x6a, 0x88, 0x85, 0xa3, 0x08, 0xd3, 0x13, 0x19, 0x8a, 0x2e, 0x03, 0x70, 0x73, 0x44,
    0xa4, 0x09, 0x38, 0x22, 0x29, 0x9f, 0x31, 0xd0, 0x08, 0x2e, 0xfa, 0x98, 0xec, 0x4e, 0x6c, 0x89,
    0x45, 0x28, 0x21, 0xe6, 0x38, 0xd0, 0x13, 0x77, 0xbe, 0x54, 0x66, 0xcf, 0x34, 0xe9, 0x0c, 0x6c,
    0xc0, 0xac, 0x29, 0xb7, 0xc9, 0x7c, 0x50, 0xdd, 0x3f, 0x84, 0xd5, 0xb5, 0xb5, 0x47, 0x09, 0x17,
    0x92, 0x16, 0xd5, 0xd9, 0x89, 0x79, 0xfb, 0x1b, 0xd1, 0x31, 0x0b, 0xa6, 0x98, 0xdf, 0xb5, 0xac,
    0x2f, 0xfd, 0x72, 0xdb, 0xd0, 0x1a, 0xdf, 0xb7, 0xb8, 0xe1, 0xaf, 0xed, 0x6a, 0x26, 0x7e, 0x96,
    0xba, 0x7c, 0x90, 0x45, 0xf1, 0x2c, 0x7f, 0x99, 0x24, 0xa1, 0x99, 0x47, 0xb3, 0x91, 0x6c, 0xf7,
    0x08, 0x01, 0xf2, 0xe2, 0x85, 0x8e, 0xfc, 0x16, 0x63, 0x69, 0x20, 0xd8, 0x71, 0x57, 0x4e, 0x69,
    0xa4, 0x58, 0xfe, 0xa3, 0xf4, 0x93, 0x3d, 0x7e, 0x0d, 0x95, 0x74, 0x8f, 0x72, 0x8e, 0xb6, 0x58,
    0x71, 0x8b, 0xcd, 0x58, 0x82, 0x15, 0x4a, 0xee, 0x7b, 0x54, 0xa4, 0x1d, 0xc2, 0x5a, 0x59, 0xb5,
    0x9c, 0x30, 0xd5, 0x39, 0x2a, 0xf2, 0x60, 0x13, 0xc5, 0xd1, 0xb0, 0x23, 0x28, 0x60, 0x85, 0xf0,
    0xca, 0x41, 0x79, 0x18, 0xb8, 0xdb, 0x38, 0xef, 0x8e, 0x79, 0xdc, 0xb0, 0x60, 0x3a, 0x18, 0x0e,
    0x6c, 0x9e, 0x0e, 0x8b, 0xb0, 0x1e, 0x8a, 0x3e, 0xd7, 0x15, 0x77, 0xc1, 0xbd, 0x31, 0x4b, 0x27,
    0x78, 0xaf, 0x2f, 0xda, 0x55, 0x60, 0x5c, 0x60, 0xe6, 0x55, 0x25, 0xf3, 0xaa, 0x55, 0xab, 0x94,
    0x57, 0x48, 0x98, 0x62, 0x63, 0xe8, 0x14, 0x40, 0x55, 0xca, 0x39, 0x6a, 0x2a, 0xab, 0x10, 0xb6,
    0xb4, 0xcc, 0x5c, 0x34, 0x11, 0x41, 0xe8, 0xce, 0xa1, 0x54, 0x86, 0xaf, 0x7c, 0x72, 0xe9, 0x93,
    0xb3, 0xee, 0x14, 0x11, 0x63, 0x6f, 0xbc, 0x2a, 0x2b, 0xa9, 0xc5, 0x5d, 0x74, 0x18, 0x31, 0xf6,
    0xce, 0x5c, 0x3e, 0x16, 0x9b, 0x87, 0x93, 0x1e, 0xaf, 0xd6, 0xba, 0x33, 0x6c, 0x24, 0xcf, 0x5c,
    0x7a, 0x32, 0x53, 0x81, 0x28, 0x95, 0x86, 0x77, 0x3b, 0x8f, 0x48, 0x98, 0x6b, 0x4b, 0xb9, 0xaf,
    0xc4, 0xbf, 0xe8, 0x1b, 0x66, 0x28, 0x21, 0x93, 0x61, 0xd8, 0x09, 0xcc, 0xfb, 0x21, 0xa9, 0x91,
    0x48, 0x7c, 0xac, 0x60, 0x5d, 0xec, 0x80, 0x32, 0xef, 0x84, 0x5d, 0x5d, 0xe9, 0x85, 0x75, 0xb1,
    0xdc, 0x26, 0x23, 0x02, 0xeb, 0x65, 0x1b, 0x88, 0x23, 0x89, 0x3e, 0x81, 0xd3, 0x96, 0xac, 0xc5,
    0x0f, 0x6d, 0x6f, 0xf3, 0x83, 0xf4, 0x42, 0x39, 0x2e, 0x0b, 0x44, 0x82, 0xa4, 0x84, 0x20, 0x04,
    0x69, 0xc8, 0xf0, 0x4a, 0x9e, 0x1f, 0x9b, 0x5e, 0x21, 0xc6, 0x68, 0x42, 0xf6, 0xe9, 0x6c, 0x9a,
    0x67, 0x0c, 0x9c, 0x61, 0xab, 0xd3, 0x88, 0xf0, 0x6a, 0x51, 0xa0, 0xd2, 0xd8, 0x54, 0x2f, 0x68,
    0x96, 0x0f, 0xa7, 0x28, 0xab, 0x51, 0x33, 0xa3, 0x6e, 0xef, 0x0b, 0x6c, 0x13, 0x7a, 0x3b, 0xe4,
    0xba, 0x3b, 0xf0, 0x50, 0x7e, 0xfb, 0x2a, 0x98, 0xa1, 0xf1, 0x65, 0x1d, 0x39, 0xaf, 0x01, 0x76,
    0x66, 0xca, 0x59, 0x3e, 0x82, 0x43, 0x0e, 0x88, 0x8c, 0xee, 0x86, 0x19, 0x45, 0x6f, 0x9f, 0xb4,
    0x7d, 0x84, 0xa5, 0xc3, 0x3b, 0x8b, 0x5e, 0xbe, 0xe0, 0x6f, 0x75, 0xd8, 0x85, 0xc1, 0x20, 0x73,
    0x40, 0x1a, 0x44, 0x9f, 0x56, 0xc1, 0x6a, 0xa6, 0x4e, 0xd3, 0xaa, 0x62, 0x36, 0x3f, 0x77, 0x06,
    0x1b, 0xfe, 0xdf, 0x72, 0x42, 0x9b, 0x02, 0x3d, 0x37, 0xd0, 0xd7, 0x24, 0xd0, 0x0a, 0x12, 0x48,
    0xdb, 0x0f, 0xea, 0xd3, 0x49, 0xf1, 0xc0, 0x9b, 0x07, 0x53, 0x72, 0xc9, 0x80, 0x99, 0x1b, 0x7b,
    0x25, 0xd4, 0x79, 0xd8, 0xf6, 0xe8, 0xde, 0xf7, 0xe3, 0xfe, 0x50, 0x1a, 0xb6, 0x79, 0x4c, 0x3b,
    0x97, 0x6c, 0xe0, 0xbd, 0x04, 0xc0, 0x06, 0xba, 0xc1, 0xa9, 0x4f, 0xb6, 0x40, 0x9f, 0x60, 0xc4,
    0x5e, 0x5c, 0x9e, 0xc2, 0x19, 0x6a, 0x24, 0x63, 0x68, 0xfb, 0x6f, 0xaf, 0x3e, 0x6c, 0x53, 0xb5,
    0x13, 0x39, 0xb2, 0xeb, 0x3b, 0x52, 0xec, 0x6f, 0x6d, 0xfc, 0x51, 0x1f, 0x9b, 0x30, 0x95, 0x2c,
    0xcc, 0x81, 0x45, 0x44, 0xaf, 0x5e, 0xbd, 0x09, 0xbe, 0xe3, 0xd0, 0x04, 0xde, 0x33, 0x4a, 0xfd,
    0x66, 0x0f, 0x28, 0x07, 0x19, 0x2e, 0x4b, 0xb3, 0xc0, 0xcb, 0xa8, 0x57, 0x45, 0xc8, 0x74, 0x0f,
    0xd2, 0x0b, 0x5f, 0x39, 0xb9, 0xd3, 0xfb, 0xdb, 0x55, 0x79, 0xc0, 0xbd, 0x1a, 0x60, 0x32, 0x0a,
    0xd6, 0xa1, 0x00, 0xc6, 0x40, 0x2c, 0x72, 0x79, 0x67, 0x9f, 0x25, 0xfe, 0xfb, 0x1f, 0xa3, 0xcc,
    0x8e, 0xa5, 0xe9, 0xf8, 0xdb, 0x32, 0x22, 0xf8, 0x3c, 0x75, 0x16, 0xdf, 0xfd, 0x61, 0x6b, 0x15,
    0x2f, 0x50, 0x1e, 0xc8, 0xad, 0x05, 0x52, 0xab, 0x32, 0x3d, 0xb5, 0xfa, 0xfd, 0x23, 0x87, 0x60,
    0x53, 0x31, 0x7b, 0x48, 0x3e, 0x00, 0xdf, 0x82, 0x9e, 0x5c, 0x57, 0xbb, 0xca, 0x6f, 0x8c, 0xa0,
    0x1a, 0x87, 0x56, 0x2e, 0xdf, 0x17, 0x69, 0xdb, 0xd5, 0x42, 0xa8, 0xf6, 0x28, 0x7e, 0xff, 0xc3,
    0xac, 0x67, 0x32, 0xc6, 0x8c, 0x4f, 0x55, 0x73, 0x69, 0x5b, 0x27, 0xb0, 0xbb, 0xca, 0x58, 0xc8,
    0xe1, 0xff, 0xa3, 0x5d, 0xb8, 0xf0, 0x11, 0xa0, 0x10, 0xfa, 0x3d, 0x98, 0xfd, 0x21, 0x83, 0xb8,
    0x4a, 0xfc, 0xb5, 0x6c, 0x2d, 0xd1, 0xd3, 0x5b, 0x9a, 0x53, 0xe4, 0x79, 0xb6, 0xf8, 0x45, 0x65,
    0xd2, 0x8e, 0x49, 0xbc, 0x4b, 0xfb, 0x97, 0x90, 0xe1, 0xdd, 0xf2, 0xda, 0xa4, 0xcb, 0x7e, 0x33,
    0x62, 0xfb, 0x13, 0x41, 0xce, 0xe4, 0xc6, 0xe8, 0xef, 0x20, 0xca, 0xda, 0x36, 0x77, 0x4c, 0x01,
    0xd0, 0x7e, 0x9e, 0xfe, 0x2b, 0xf1, 0x1f, 0xb4, 0x95, 0xdb, 0xda, 0x4d, 0xae, 0x90, 0x91, 0x98,
    0xea, 0xad, 0x8e, 0x71, 0x6b, 0x93, 0xd5, 0xa0, 0xd0, 0x8e, 0xd1, 0xd0, 0xaf, 0xc7, 0x25, 0xe0,
    0x8e, 0x3c, 0x5b, 0x2f, 0x8e, 0x75, 0x94, 0xb7, 0x8f, 0xf6, 0xe2, 0xfb, 0xf2, 0x12, 0x2b, 0x64,
    0x88, 0x88, 0xb8, 0x12, 0x90, 0x0d, 0xf0, 0x1c, 0x4f, 0xad, 0x5e, 0xa0, 0x68, 0x8f, 0xc3, 0x1c,
    0xd1, 0xcf, 0xf1, 0x91, 0xb3, 0xa8, 0xc1, 0xad, 0x2f, 0x2f, 0x22, 0x18, 0xbe, 0x0e, 0x17, 0x77,
    0xea, 0x75, 0x2d, 0xfe, 0x8b, 0x02, 0x1f, 0xa1, 0xe5, 0xa0, 0xcc, 0x0f, 0xb5, 0x6f, 0x74, 0xe8,
    0x18, 0xac, 0xf3, 0xd6, 0xce, 0x89, 0xe2, 0x99, 0xb4, 0xa8, 0x4f, 0xe0, 0xfd, 0x13, 0xe0, 0xb7,
    0x7c, 0xc4, 0x3b, 0x81, 0xd2, 0xad, 0xa8, 0xd9, 0x16, 0x5f, 0xa2, 0x66, 0x80, 0x95, 0x77, 0x05,
    0x93, 0xcc, 0x73, 0x14, 0x21, 0x1a, 0x14, 0x77, 0xe6, 0xad, 0x20, 0x65, 0x77, 0xb5, 0xfa, 0x86,
    0xc7, 0x54, 0x42, 0xf5, 0xfb, 0x9d, 0x35, 0xcf, 0xeb, 0xcd, 0xaf, 0x0c, 0x7b, 0x3e, 0x89, 0xa0,
    0xd6, 0x41, 0x1b, 0xd3, 0xae, 0x1e, 0x7e, 0x49, 0x00, 0x25, 0x0e, 0x2d, 0x20, 0x71, 0xb3, 0x5e,
    0x22, 0x68, 0x00, 0xbb, 0x57, 0xb8, 0xe0, 0xaf, 0x24, 0x64, 0x36, 0x9b, 0xf0, 0x09, 0xb9, 0x1e,
    0x55, 0x63, 0x91, 0x1d, 0x59, 0xdf, 0xa6, 0xaa, 0x78, 0xc1, 0x43, 0x89, 0xd9, 0x5a, 0x53, 0x7f,
    0x20, 0x7d, 0x5b, 0xa2, 0x02, 0xe5, 0xb9, 0xc5, 0x83, 0x26, 0x03, 0x76, 0x62, 0x95, 0xcf, 0xa9,
    0x11, 0xc8, 0x19, 0x68, 0x4e, 0x73, 0x4a, 0x41, 0xb3, 0x47, 0x2d, 0xca, 0x7b, 0x14, 0xa9, 0x4a,
    0x1b, 0x51, 0x00, 0x52, 0x9a, 0x53, 0x29, 0x15, 0xd6, 0x0f, 0x57, 0x3f, 0xbc, 0x9b, 0xc6, 0xe4,
    0x2b, 0x60, 0xa4, 0x76, 0x81, 0xe6, 0x74, 0x00, 0x08, 0xba, 0x6f, 0xb5, 0x57, 0x1b, 0xe9, 0x1f,
    0xf2, 0x96, 0xec, 0x6b, 0x2a, 0x0d, 0xd9, 0x15, 0xb6, 0x63, 0x65, 0x21, 0xe7, 0xb9, 0xf9, 0xb6,
    0xff, 0x34, 0x05, 0x2e, 0xc5, 0x85, 0x56, 0x64, 0x53, 0xb0, 0x2d, 0x5d, 0xa9, 0x9f, 0x8f, 0xa1,
    0x08, 0xba, 0x47, 0x99, 0x6e, 0x85, 0x07, 0x6a, 0x4b, 0x7a, 0x70, 0xe9, 0xb5, 0xb3, 0x29, 0x44,
    0xdb, 0x75, 0x09, 0x2e, 0xc4, 0x19, 0x26, 0x23, 0xad, 0x6e, 0xa6, 0xb0, 0x49, 0xa7, 0xdf, 0x7d,
    0x9c, 0xee, 0x60, 0xb8, 0x8f, 0xed, 0xb2, 0x66, 0xec, 0xaa, 0x8c, 0x71, 0x69, 0x9a, 0x17, 0xff,
    0x56, 0x64, 0x52, 0x6c, 0xc2, 0xb1, 0x9e, 0xe1, 0x19, 0x36, 0x02, 0xa5, 0x75, 0x09, 0x4c, 0x29,
    0xa0, 0x59, 0x13, 0x40, 0xe4, 0x18, 0x3a, 0x3e, 0x3f, 0x54, 0x98, 0x9a, 0x5b, 0x42, 0x9d, 0x65,
    0x6b, 0x8f, 0xe4, 0xd6, 0x99, 0xf7, 0x3f, 0xd6, 0xa1, 0xd2, 0x9c, 0x07, 0xef, 0xe8, 0x30, 0xf5,
    0x4d, 0x2d, 0x38, 0xe6, 0xf0, 0x25, 0x5d, 0xc1, 0x4c, 0xdd, 0x20, 0x86, 0x84, 0x70, 0xeb, 0x26,
    0x63, 0x82, 0xe9, 0xc6, 0x02, 0x1e, 0xcc, 0x5e, 0x09, 0x68, 0x6b, 0x3f, 0x3e, 0xba, 0xef, 0xc9,
    0x3c, 0x97, 0x18, 0x14, 0x6b, 0x6a, 0x70, 0xa1, 0x68, 0x7f, 0x35, 0x84, 0x52, 0xa0, 0xe2, 0x86,
    0xb7, 0x9c, 0x53, 0x05, 0xaa, 0x50, 0x07, 0x37, 0x3e, 0x07, 0x84, 0x1c, 0x7f, 0xde, 0xae, 0x5c,
    0x8e, 0x7d, 0x44, 0xec, 0x57, 0x16, 0xf2, 0xb8, 0xb0, 0x3a, 0xda, 0x37, 0xf0, 0x50, 0x0c, 0x0d,
    0xf0, 0x1c, 0x1f, 0x04, 0x02, 0x00, 0xb3, 0xff, 0xae, 0x0c, 0xf5, 0x1a, 0x3c, 0xb5, 0x74, 0xb2,
    0x25, 0x83, 0x7a, 0x58, 0xdc, 0x09, 0x21, 0xbd, 0xd1, 0x91, 0x13, 0xf9, 0x7c, 0xa9, 0x2f, 0xf6,
    0x94, 0x32, 0x47, 0x73, 0x22, 0xf5, 0x47, 0x01, 0x3a, 0xe5, 0xe5, 0x81, 0x37, 0xc2, 0xda, 0xdc,
    0xc8, 0xb5, 0x76, 0x34, 0x9a, 0xf3, 0xdd, 0xa7, 0xa9, 0x44, 0x61, 0x46, 0x0f, 0xd0, 0x03, 0x0e,
    0xec, 0xc8, 0xc7, 0x3e, 0xa4, 0x75, 0x1e, 0x41, 0xe2, 0x38, 0xcd, 0x99, 0x3b, 0xea, 0x0e, 0x2f,
    0x32, 0x80, 0xbb, 0xa1, 0x18, 0x3e, 0xb3, 0x31, 0x4e, 0x54, 0x8b, 0x38, 0x4f, 0x6d, 0xb9, 0x08,
    0x6f, 0x42, 0x0d, 0x03, 0xf6, 0x0a, 0x04, 0xbf, 0x2c, 0xb8, 0x12, 0x90, 0x24, 0x97, 0x7c, 0x79,
    0x56, 0x79, 0xb0, 0x72, 0xbc, 0xaf, 0x89, 0xaf, 0xde, 0x9a, 0x77, 0x1f, 0xd9, 0x93, 0x08, 0x10,
    0xb3, 0x8b, 0xae, 0x12, 0xdc, 0xcf, 0x3f, 0x2e, 0x55, 0x12, 0x72, 0x1f, 0x2e, 0x6b, 0x71, 0x24,
    0x50, 0x1a, 0xdd, 0xe6, 0x9f, 0x84, 0xcd, 0x87, 0x7a, 0x58, 0x47, 0x18, 0x74, 0x08, 0xda, 0x17,
    0xbc, 0x9f, 0x9a, 0xbc, 0xe9, 0x4b, 0x7d, 0x8c, 0xec, 0x7a, 0xec, 0x3a, 0xdb, 0x85, 0x1d, 0xfa,
    0x63, 0x09, 0x43, 0x66, 0xc4, 0x64, 0xc3, 0xd2, 0xef, 0x1c, 0x18, 0x47, 0x32, 0x15, 0xd9, 0x08,
    0xdd, 0x43, 0x3b, 0x37, 0x24, 0xc2, 0xba, 0x16, 0x12, 0xa1, 0x4d, 0x43, 0x2a, 0x65, 0xc4, 0x51,
    0x50, 0x94, 0x00, 0x02, 0x13, 0x3a, 0xe4, 0xdd, 0x71, 0xdf, 0xf8, 0x9e, 0x10, 0x31, 0x4e, 0x55,
    0x81, 0xac, 0x77, 0xd6, 0x5f, 0x11, 0x19, 0x9b, 0x04, 0x35, 0x56, 0xf1, 0xd7, 0xa3, 0xc7, 0x6b,
    0x3c, 0x11, 0x18, 0x3b, 0x59, 0x24, 0xa5, 0x09, 0xf2, 0x8f, 0xe6, 0xed, 0x97, 0xf1, 0xfb, 0xfa,
    0x9e, 0xba, 0xbf, 0x2c, 0x1e, 0x15, 0x3c, 0x6e, 0x86, 0xe3, 0x45, 0x70, 0xea, 0xe9, 0x6f, 0xb1,
    0x86, 0x0e, 0x5e, 0x0a, 0x5a, 0x3e, 0x2a, 0xb3, 0x77, 0x1f, 0xe7, 0x1c, 0x4e, 0x3d, 0x06, 0xfa,
    0x29, 0x65, 0xdc, 0xb9, 0x99, 0xe7, 0x1d, 0x0f, 0x80, 0x3e, 0x89, 0xd6, 0x52, 0x66, 0xc8, 0x25,
    0x2e, 0x4c, 0xc9, 0x78, 0x9c, 0x10, 0xb3, 0x6a, 0xc6, 0x15, 0x0e, 0xba, 0x94, 0xe2, 0xea, 0x78,
    0xa5, 0xfc, 0x3c, 0x53, 0x1e, 0x0a, 0x2d, 0xf4, 0xf2, 0xf7, 0x4e, 0xa7, 0x36, 0x1d, 0x2b, 0x3d,
    0x19, 0x39, 0x26, 0x0f, 0x19, 0xc2, 0x79, 0x60, 0x52, 0x23, 0xa7, 0x08, 0xf7, 0x13, 0x12, 0xb6,
    0xeb, 0xad, 0xfe, 0x6e, 0xea, 0xc3, 0x1f, 0x66, 0xe3, 0xbc, 0x45, 0x95, 0xa6, 0x7b, 0xc8, 0x83,
    0xb1, 0x7f, 0x37, 0xd1, 0x01, 0x8c, 0xff, 0x28, 0xc3, 0x32, 0xdd, 0xef, 0xbe, 0x6c, 0x5a, 0xa5,
    0x65, 0x58, 0x21, 0x85, 0x68, 0xab, 0x98, 0x02, 0xee, 0xce, 0xa5, 0x0f, 0xdb, 0x2f, 0x95, 0x3b,
    0x2a, 0xef, 0x7d, 0xad, 0x5b, 0x6e, 0x2f, 0x84, 0x15, 0x21, 0xb6, 0x28, 0x29, 0x07, 0x61, 0x70,
    0xec, 0xdd, 0x47, 0x75, 0x61, 0x9f, 0x15, 0x10, 0x13, 0xcc, 0xa8, 0x30, 0xeb, 0x61, 0xbd, 0x96,
    0x03, 0x34, 0xfe, 0x1e, 0xaa, 0x03, 0x63, 0xcf, 0xb5, 0x73, 0x5c, 0x90, 0x4c, 0x70, 0xa2, 0x39,
    0xd5, 0x9e, 0x9e, 0x0b, 0xcb, 0xaa, 0xde, 0x14, 0xee, 0xcc, 0x86, 0xbc, 0x60, 0x62, 0x2c, 0xa7,
    0x9c, 0xab, 0x5c, 0xab, 0xb2, 0xf3, 0x84, 0x6e, 0x64, 0x8b, 0x1e, 0xaf, 0x19, 0xbd, 0xf0, 0xca,
    0xa0, 0x23, 0x69, 0xb9, 0x65, 0x5a, 0xbb, 0x50, 0x40, 0x68, 0x5a, 0x32, 0x3c, 0x2a, 0xb4, 0xb3,
    0x31, 0x9e, 0xe9, 0xd5, 0xc0, 0x21, 0xb8, 0xf7, 0x9b, 0x54, 0x0b, 0x19, 0x87, 0x5f, 0xa0, 0x99,
    0x95, 0xf7, 0x99, 0x7e, 0x62, 0x3d, 0x7d, 0xa8, 0xf8, 0x37, 0x88, 0x9a, 0x97, 0xe3, 0x2d, 0x77,
    0x11, 0xed, 0x93, 0x5f, 0x16, 0x68, 0x12, 0x81, 0x0e, 0x35, 0x88, 0x29, 0xc7, 0xe6, 0x1f, 0xd6,
    0x96, 0xde, 0xdf, 0xa1, 0x78, 0x58, 0xba, 0x99, 0x57, 0xf5, 0x84, 0xa5, 0x1b, 0x22, 0x72, 0x63,
    0x9b, 0x83, 0xc3, 0xff, 0x1a, 0xc2, 0x46, 0x96, 0xcd, 0xb3, 0x0a, 0xeb, 0x53, 0x2e, 0x30, 0x54,
    0x8f, 0xd9, 0x48, 0xe4, 0x6d, 0xbc, 0x31, 0x28, 0x58, 0xeb, 0xf2, 0xef, 0x34, 0xc6, 0xff, 0xea,
    0xfe, 0x28, 0xed, 0x61, 0xee, 0x7c, 0x3c, 0x73, 0x5d, 0x4a, 0x14, 0xd9, 0xe8, 0x64, 0xb7, 0xe3,
    0x42, 0x10, 0x5d, 0x14, 0x20, 0x3e, 0x13, 0xe0, 0x45, 0xee, 0xe2, 0xb6, 0xa3, 0xaa, 0xab, 0xea,
    0xdb, 0x6c, 0x4f, 0x15, 0xfa, 0xcb, 0x4f, 0xd0, 0xc7, 0x42, 0xf4, 0x42, 0xef, 0x6a, 0xbb, 0xb5,
    0x65, 0x4f, 0x3b, 0x1d, 0x41, 0xcd, 0x21, 0x05, 0xd8, 0x1e, 0x79, 0x9e, 0x86, 0x85, 0x4d, 0xc7,
    0xe4, 0x4b, 0x47, 0x6a, 0x3d, 0x81, 0x62, 0x50, 0xcf, 0x62, 0xa1, 0xf2, 0x5b, 0x8d, 0x26, 0x46,
    0xfc, 0x88, 0x83, 0xa0, 0xc1, 0xc7, 0xb6, 0xa3, 0x7f, 0x15, 0x24, 0xc3, 0x69, 0xcb, 0x74, 0x92,
    0x47, 0x84, 0x8a, 0x0b, 0x56, 0x92, 0xb2, 0x85, 0x09, 0x5b, 0xbf, 0x00, 0xad, 0x19, 0x48, 0x9d,
    0x14, 0x62, 0xb1, 0x74, 0x23, 0x82, 0x0e, 0x00, 0x58, 0x42, 0x8d, 0x2a, 0x0c, 0x55, 0xf5, 0xea,
    0x1d, 0xad, 0xf4, 0x3e, 0x23, 0x3f, 0x70, 0x61, 0x33, 0x72, 0xf0, 0x92, 0x8d, 0x93, 0x7e, 0x41,
    0xd6, 0x5f, 0xec, 0xf1, 0x6c, 0x22, 0x3b, 0xdb, 0x7c, 0xde, 0x37, 0x59, 0xcb, 0xee, 0x74, 0x60,
    0x40, 0x85, 0xf2, 0xa7, 0xce, 0x77, 0x32, 0x6e, 0xa6, 0x07, 0x80, 0x84, 0x19, 0xf8, 0x50, 0x9e,
    0xe8, 0xef, 0xd8, 0x55, 0x61, 0xd9, 0x97, 0x35, 0xa9, 0x69, 0xa7, 0xaa, 0xc5, 0x0c, 0x06, 0xc2,
    0x5a, 0x04, 0xab, 0xfc, 0x80, 0x0b, 0xca, 0xdc, 0x9e, 0x44, 0x7a, 0x2e, 0xc3, 0x45, 0x34, 0x84,
    0xfd, 0xd5, 0x67, 0x05, 0x0e, 0x1e, 0x9e, 0xc9, 0xdb, 0x73, 0xdb, 0xd3, 0x10, 0x55, 0x88, 0xcd,
    0x67, 0x5f, 0xda, 0x79, 0xe3, 0x67, 0x43, 0x40, 0xc5, 0xc4, 0x34, 0x65, 0x71, 0x3e, 0x38, 0xd8,
    0x3d, 0x28, 0xf8, 0x9e, 0xf1, 0x6d, 0xff, 0x20, 0x15, 0x3e, 0x21, 0xe7, 0x8f, 0xb0, 0x3d, 0x4a,
    0xe6, 0xe3, 0x9f, 0x2b, 0xdb, 0x83, 0xad, 0xf7, 0xe9, 0x3d, 0x5a, 0x68, 0x94, 0x81, 0x40, 0xf7,
    0xf6, 0x4c, 0x26, 0x1c, 0x94, 0x69, 0x29, 0x34, 0x41, 0x15, 0x20, 0xf7, 0x76, 0x02, 0xd4, 0xf7,
    0xbc, 0xf4, 0x6b, 0x2e, 0xd4, 0xa2, 0x00, 0x68, 0xd4, 0x08, 0x24, 0x71, 0x33, 0x20, 0xf4, 0x6a,
    0x43, 0xb7, 0xd4, 0xb7, 0x50, 0x00, 0x61, 0xaf, 0x1e, 0x39, 0xf6, 0x2e, 0x97, 0x24, 0x45, 0x46,
];
