pub mod cli;
pub mod finite;
pub mod group_ring;
pub mod groups;
pub mod perm;
pub mod report;
pub mod scenarios;
pub mod sidki;
pub mod todd_coxeter;
pub mod words;

use sha2::{Digest, Sha256};

/// First 16 hex digits of the SHA-256 of `bytes`.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(&Sha256::digest(bytes)[..8])
}
