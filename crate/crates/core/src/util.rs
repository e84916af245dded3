//! Small shared utilities: stable fingerprints for context identity checks.

use serde::Serialize;

/// FNV-1a, 64-bit. Stable across platforms and releases, unlike the std
/// hasher; fingerprints end up in serialized artifacts.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in bytes {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Deterministic identity string for a serializable value.
pub fn fingerprint_json<T: Serialize>(label: &str, value: &T) -> String {
    let json = serde_json::to_string(value).expect("fingerprint serialization cannot fail");
    format!("{label}:{:016x}", fnv1a64(json.as_bytes()))
}
