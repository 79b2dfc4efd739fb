//! Seed derivation.
//!
//! A child seed is the first eight bytes (little-endian) of
//! `SHA-256(master_le_bytes ‖ part_0 ‖ 0x1f ‖ part_1 ‖ 0x1f ‖ …)`.

use sha2::{Digest, Sha256};

pub fn derive_seed(master: u64, parts: &[&str]) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    for part in parts {
        h.update(part.as_bytes());
        h.update([0x1f]);
    }
    let digest = h.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}
