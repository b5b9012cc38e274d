//! Frozen reference outputs under the built-in pi keys.

/// First 240 output bytes for seed (0, 0, 0, 0).
#[rustfmt::skip]
pub const ZERO_SEED_FIRST_BUFFER: [u8; 240] = [
    0x8d, 0x02, 0xb1, 0x9e, 0xbb, 0x2a, 0x6b, 0x30, 0x4b, 0x3a, 0x57, 0x5d, 0xdc, 0x2e, 0x03, 0x33,
    0x71, 0x66, 0xb5, 0xed, 0x52, 0xf2, 0xf2, 0x81, 0x97, 0x5f, 0x75, 0x06, 0x88, 0xc0, 0xd2, 0x98,
    0xab, 0xa5, 0xec, 0x75, 0xc0, 0xf9, 0xdd, 0xd6, 0x73, 0x24, 0x96, 0x80, 0x5f, 0xad, 0x5a, 0xca,
    0xcd, 0x89, 0xf7, 0x9d, 0x9c, 0x26, 0x4f, 0x62, 0xa0, 0x04, 0xd9, 0x64, 0xf6, 0x40, 0xa5, 0xcf,
    0xc2, 0x82, 0xc2, 0x2b, 0x16, 0xed, 0x3e, 0x09, 0x3f, 0x02, 0x35, 0x59, 0x23, 0x68, 0x65, 0x83,
    0x9b, 0xee, 0x83, 0x41, 0x8c, 0xc3, 0x9c, 0x72, 0xa3, 0x35, 0x5a, 0x74, 0x1a, 0xcb, 0x66, 0xac,
    0x31, 0x4e, 0x1d, 0xd3, 0x0f, 0xb2, 0x2a, 0xcc, 0x8d, 0xdc, 0x11, 0xf4, 0x90, 0x25, 0x24, 0xbe,
    0x91, 0x0d, 0x81, 0x4a, 0xcf, 0x69, 0x49, 0xcd, 0xc4, 0x41, 0x61, 0xfe, 0xbf, 0x47, 0x48, 0x8a,
    0x29, 0xc5, 0xb3, 0x65, 0x1c, 0x91, 0x2d, 0xfc, 0x44, 0x71, 0x5f, 0x44, 0xc7, 0xc3, 0xb3, 0x80,
    0xd9, 0xe0, 0x09, 0x6e, 0x34, 0x18, 0x8a, 0xa7, 0xf4, 0xce, 0xaf, 0x52, 0xc1, 0x14, 0x72, 0x70,
    0x87, 0xfb, 0x87, 0xc6, 0x16, 0xb4, 0x0b, 0x83, 0x42, 0xa4, 0xc0, 0x9a, 0x38, 0xbf, 0xdf, 0xa5,
    0x62, 0xab, 0x4d, 0xde, 0xa6, 0x77, 0x76, 0xe9, 0xcb, 0x10, 0xe1, 0x26, 0x3f, 0xba, 0x69, 0x2a,
    0x11, 0x1a, 0xc1, 0x8c, 0x96, 0x0d, 0x00, 0x18, 0x78, 0x82, 0x7f, 0x63, 0x66, 0x28, 0x2f, 0x9e,
    0xdb, 0x9a, 0x3b, 0xa0, 0xb3, 0x3d, 0x9b, 0xa5, 0x6a, 0xc0, 0x4f, 0x39, 0x3d, 0x44, 0x3f, 0x60,
    0x54, 0x72, 0xcd, 0x3f, 0xae, 0xf2, 0xa1, 0x45, 0xc3, 0x4b, 0x97, 0xca, 0x8d, 0x48, 0xc5, 0xc7,
];

/// First 240 output bytes for seed (1, 2, 3, 4).
#[rustfmt::skip]
pub const SEED_1234_FIRST_BUFFER: [u8; 240] = [
    0x21, 0x14, 0x2a, 0x41, 0xaf, 0x00, 0xda, 0x8b, 0x0f, 0xfa, 0x33, 0xdc, 0x92, 0x18, 0x97, 0x0f,
    0x05, 0xdb, 0x18, 0x5b, 0xac, 0xd7, 0xdc, 0x2f, 0x86, 0x79, 0x8d, 0x4a, 0x9b, 0xd5, 0xb3, 0x0e,
    0x75, 0x3f, 0x66, 0x1c, 0x50, 0x7e, 0x01, 0xb5, 0x46, 0x02, 0xfa, 0x56, 0xe9, 0xfd, 0x8c, 0xe8,
    0xd3, 0x66, 0xe8, 0xb1, 0xad, 0x11, 0x73, 0x32, 0xec, 0xc0, 0xe2, 0x25, 0xb1, 0x19, 0x9f, 0x9d,
    0x14, 0x17, 0xa6, 0x77, 0x8d, 0xbb, 0x0b, 0x15, 0x10, 0x69, 0x66, 0x92, 0x54, 0xc9, 0x4b, 0x6e,
    0x29, 0xfe, 0x0c, 0x5f, 0x76, 0x57, 0xd7, 0xd5, 0x63, 0x84, 0x9e, 0xd9, 0x0d, 0x56, 0x8f, 0x7b,
    0x96, 0x96, 0xe9, 0xe5, 0x6d, 0x8b, 0x37, 0xdf, 0x50, 0xa1, 0x6a, 0x8c, 0x78, 0x3a, 0xf8, 0xa3,
    0x60, 0xdb, 0xee, 0x17, 0xd5, 0x51, 0xc4, 0x0f, 0xaa, 0x5b, 0xa5, 0x0c, 0xaa, 0x58, 0xb1, 0xe8,
    0x02, 0x5c, 0x02, 0x20, 0x42, 0x50, 0xb3, 0x27, 0x0f, 0xb8, 0x60, 0xf0, 0x8d, 0x0a, 0xfb, 0x99,
    0xd3, 0x41, 0x60, 0xaa, 0x12, 0x52, 0x2c, 0xe4, 0x3e, 0x45, 0xe9, 0x9e, 0x86, 0x1f, 0x9f, 0x82,
    0xf8, 0xbd, 0xe7, 0x6a, 0x38, 0xc4, 0xf4, 0x61, 0x8c, 0xec, 0xba, 0xda, 0xf2, 0xda, 0x3d, 0xa2,
    0x8b, 0xdd, 0xe7, 0x19, 0x7b, 0x74, 0xe9, 0x0f, 0x0f, 0x1d, 0x25, 0x4f, 0xc2, 0x6a, 0x2d, 0x77,
    0xa6, 0x67, 0x98, 0xdb, 0x29, 0x1e, 0xeb, 0x71, 0x5c, 0x64, 0x40, 0xe6, 0x6d, 0x33, 0x2b, 0x91,
    0x06, 0x68, 0x38, 0xb5, 0x33, 0xba, 0x4d, 0x8d, 0x26, 0x5f, 0xc4, 0xd8, 0xbd, 0x7f, 0x1f, 0x2e,
    0x0b, 0xa5, 0xb8, 0xce, 0x27, 0x73, 0x8b, 0x8d, 0x3b, 0x58, 0xbf, 0x2c, 0xd9, 0x71, 0xa4, 0xb5,
];
