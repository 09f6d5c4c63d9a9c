//! Enumeration caps shared by the exponential-time routines.
//!
//! Defaults can be raised for a whole process through the `CODE_DESIGNER_CAPS`
//! environment variable, a comma-separated list of `key=value` pairs:
//!
//! ```text
//! CODE_DESIGNER_CAPS="subsets=26,enum_k=5,enum_n=5,bruteforce_log2=30"
//! ```

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const CAPS_ENV: &str = "CODE_DESIGNER_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest row or block count whose nonempty subsets are enumerated.
    pub subsets: usize,
    /// Largest `k` accepted by the general-instance enumerator.
    pub enum_k: usize,
    /// Largest `n` accepted by the general-instance enumerator.
    pub enum_n: usize,
    /// Brute-force distance refuses `q^k` above `2^bruteforce_log2`.
    pub bruteforce_log2: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subsets: 24,
            enum_k: 4,
            enum_n: 4,
            bruteforce_log2: 26,
        }
    }
}

impl Caps {
    pub fn parse(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Malformed(format!("{CAPS_ENV}: expected key=value, got {item:?}")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("{CAPS_ENV}: bad number in {item:?}")))?;
            match key.trim() {
                "subsets" => caps.subsets = value.min(40) as usize,
                "enum_k" => caps.enum_k = value as usize,
                "enum_n" => caps.enum_n = value as usize,
                "bruteforce_log2" => caps.bruteforce_log2 = value.min(62) as u32,
                other => return Err(Error::Malformed(format!("{CAPS_ENV}: unknown key {other:?}"))),
            }
        }
        Ok(caps)
    }

    /// Caps for this process: the environment override if present and valid,
    /// otherwise the defaults.
    pub fn global() -> Caps {
        static CAPS: OnceLock<Caps> = OnceLock::new();
        *CAPS.get_or_init(|| match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::parse(&spec).unwrap_or_default(),
            Err(_) => Caps::default(),
        })
    }

    pub fn bruteforce_limit(&self) -> u64 {
        1u64 << self.bruteforce_log2
    }
}
