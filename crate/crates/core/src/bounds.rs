//! Size caps for hom enumeration and candidate searches.
//!
//! Defaults are deliberately small; `STRENGTHLAB_BOUNDS` overrides them with
//! a comma-separated list of `key=value` pairs, e.g.
//! `STRENGTHLAB_BOUNDS=hom=8192,search=2000000`.

/// Caps applied by enumerators and searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Maximum number of morphisms a single hom-set may contain.
    pub hom_cap: u64,
    /// Maximum number of candidates a backtracking search may visit.
    pub search_cap: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            hom_cap: 4096,
            search_cap: 1_000_000,
        }
    }
}

impl Bounds {
    /// Default bounds with any `STRENGTHLAB_BOUNDS` overrides applied.
    /// Malformed entries are ignored rather than fatal.
    pub fn from_env() -> Self {
        let mut b = Bounds::default();
        if let Ok(spec) = std::env::var("STRENGTHLAB_BOUNDS") {
            b.apply_spec(&spec);
        }
        b
    }

    fn apply_spec(&mut self, spec: &str) {
        for part in spec.split(',') {
            let mut it = part.splitn(2, '=');
            let (Some(key), Some(val)) = (it.next(), it.next()) else {
                continue;
            };
            let Ok(n) = val.trim().parse::<u64>() else {
                continue;
            };
            match key.trim() {
                "hom" => self.hom_cap = n,
                "search" => self.search_cap = n,
                _ => {}
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_overrides_apply() {
        let mut b = Bounds::default();
        b.apply_spec("hom=8192,search=5");
        assert_eq!(b.hom_cap, 8192);
        assert_eq!(b.search_cap, 5);
    }

    #[test]
    fn malformed_entries_ignored() {
        let mut b = Bounds::default();
        b.apply_spec("hom=notanumber,bogus,search=7");
        assert_eq!(b.hom_cap, 4096);
        assert_eq!(b.search_cap, 7);
    }
}
