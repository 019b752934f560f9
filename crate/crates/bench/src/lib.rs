//! Fixed inputs shared by the benchmarks.

use toricmld::{cyclic_quotient, example_family, Error, ToricMfs, ToricVariety};

/// `1/r(1, a)` for a weight coprime to `r`.
pub fn surface_quotient(r: i64, a: i64) -> Result<ToricVariety, Error> {
    cyclic_quotient(r, &[1, a])
}

/// Total spaces of the example family for `l` in the given range.
pub fn family(ls: std::ops::RangeInclusive<i64>) -> Result<Vec<(i64, ToricMfs)>, Error> {
    ls.map(|l| example_family(l).map(|m| (l, m))).collect()
}
