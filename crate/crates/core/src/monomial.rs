//! Generator monomials: canonical form, formatting, and enumeration by
//! bidegree.

use std::cmp::Ordering;
use std::fmt;

use crate::catalog::{Family, Generator};
use crate::error::{Error, Result};

/// Highest homological degree the catalog covers.
pub const MAX_RANK: u32 = 5;

/// A product of generators, stored with factors in canonical order
/// (family rank, then index).
///
/// `Ord` is the report order: factor sequences compared lexicographically by
/// (family identifier, index), a shorter prefix first. This reproduces the
/// order in which the reference tables list potential generators, e.g.
/// `D_3(1)` before `h_0^2 h_6^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<Generator>,
}

impl Monomial {
    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    pub fn homological_degree(&self) -> u32 {
        self.factors.iter().map(|g| g.homological_degree()).sum()
    }

    pub fn internal_degree(&self) -> u64 {
        self.factors.iter().map(|g| g.internal_degree()).sum()
    }

    /// Multiplicity of `h_i`.
    pub fn h_count(&self, i: u32) -> usize {
        self.factors
            .iter()
            .filter(|g| g.family() == Family::H && g.index() == i)
            .count()
    }

    /// Indices of the `h` factors with repetition, ascending.
    pub fn h_indices(&self) -> Vec<u32> {
        self.indices_of(Family::H)
    }

    pub fn indices_of(&self, family: Family) -> Vec<u32> {
        self.factors
            .iter()
            .filter(|g| g.family() == family)
            .map(|g| g.index())
            .collect()
    }

    /// Factors grouped into (generator, exponent) runs.
    pub fn powers(&self) -> Vec<(Generator, usize)> {
        let mut out: Vec<(Generator, usize)> = Vec::new();
        for &g in &self.factors {
            match out.last_mut() {
                Some((last, count)) if *last == g => *count += 1,
                _ => out.push((g, 1)),
            }
        }
        out
    }

    pub fn format(&self) -> String {
        self.powers()
            .into_iter()
            .map(|(g, count)| {
                if count > 1 {
                    format!("{}^{count}", g.display_name())
                } else {
                    g.display_name()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.factors.iter().map(|g| g.report_key());
        let rhs = other.factors.iter().map(|g| g.report_key());
        lhs.cmp(rhs)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

pub fn canonicalize(factors: impl IntoIterator<Item = Generator>) -> Result<Monomial> {
    let mut factors: Vec<Generator> = factors.into_iter().collect();
    if factors.is_empty() {
        return Err(Error::EmptyMonomial);
    }
    factors.sort();
    Ok(Monomial { factors })
}

/// A bidegree (k, t) with stem n = t - k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    k: u32,
    t: u64,
}

impl Bidegree {
    pub fn from_stem(k: u32, n: i64) -> Result<Self> {
        if !(1..=MAX_RANK).contains(&k) {
            return Err(Error::UnsupportedRank(k));
        }
        if n < 0 {
            return Err(Error::InvalidStem(n));
        }
        Ok(Self {
            k,
            t: n as u64 + k as u64,
        })
    }

    /// Bidegree from internal degree; `t` must be at least `k`.
    pub fn new(k: u32, t: u64) -> Result<Self> {
        Self::from_stem(k, t as i64 - k as i64)
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn t(self) -> u64 {
        self.t
    }

    pub fn n(self) -> u64 {
        self.t - self.k as u64
    }
}

/// Every canonical monomial of homological degree `b.k()` and internal
/// degree `b.t()`, in report order.
pub fn enumerate_monomials(b: Bidegree) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(b.k() as usize);
    extend(0, 0, b.k(), b.t(), &mut current, &mut out);
    out.sort();
    out
}

/// Unchecked entry point used by callers that hold a raw (k, t).
pub fn enumerate_in(k: u32, t: u64) -> Result<Vec<Monomial>> {
    Ok(enumerate_monomials(Bidegree::new(k, t)?))
}

// Emits non-decreasing factor sequences (canonical order) starting at
// family position `pos`, with indices >= `min_index` for that family.
fn extend(
    pos: usize,
    min_index: u32,
    rem_k: u32,
    rem_t: u64,
    current: &mut Vec<Generator>,
    out: &mut Vec<Monomial>,
) {
    if rem_k == 0 {
        if rem_t == 0 {
            out.push(Monomial {
                factors: current.clone(),
            });
        }
        return;
    }
    if rem_t == 0 {
        return;
    }
    for (fi, &family) in Family::ALL.iter().enumerate().skip(pos) {
        let hd = family.homological_degree();
        if hd > rem_k {
            continue;
        }
        let mut index = if fi == pos {
            min_index.max(family.min_index())
        } else {
            family.min_index()
        };
        while let Some(d) = family.degree_at(index) {
            if d > rem_t {
                break;
            }
            current.push(Generator::new(family, index).expect("valid index"));
            extend(fi, index, rem_k - hd, rem_t - d, current, out);
            current.pop();
            if !family.indexed() {
                break;
            }
            index += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(f: Family, i: u32) -> Generator {
        Generator::new(f, i).unwrap()
    }

    fn formatted(k: u32, t: u64) -> Vec<String> {
        enumerate_in(k, t).unwrap().iter().map(|m| m.format()).collect()
    }

    #[test]
    fn canonical_examples() {
        let h = Generator::h;
        let m = canonicalize([h(6), h(0), h(6), h(0)]).unwrap();
        assert_eq!(m.format(), "h_0^2 h_6^2");
        let m = canonicalize([gen(Family::C, 0), h(1)]).unwrap();
        assert_eq!(m.format(), "h_1 c_0");
        let m = canonicalize([gen(Family::D3, 0), h(1)]).unwrap();
        assert_eq!(m.format(), "h_1 D_3(0)");
        let m = canonicalize([h(0), gen(Family::D3, 2)]).unwrap();
        assert_eq!(m.format(), "h_0 D_3(2)");
    }

    #[test]
    fn empty_factor_list_rejected() {
        assert_eq!(canonicalize([]), Err(Error::EmptyMonomial));
    }

    #[test]
    fn enumerate_reference_bidegrees() {
        assert_eq!(formatted(4, 130), ["D_3(1)", "h_0^2 h_6^2", "h_1 h_5^2 h_6"]);
        assert_eq!(formatted(4, 65), ["D_3(0)", "h_0 h_4^2 h_5"]);
        assert_eq!(formatted(4, 45), ["h_0 c_2", "h_0 h_2 h_3 h_5"]);
        assert_eq!(
            formatted(5, 67),
            ["H_1(0)", "h_0^3 h_5^2", "h_0 h_1 h_4^2 h_5", "h_1 D_3(0)"]
        );
        assert_eq!(
            formatted(5, 133),
            ["J(0)", "h_0^3 h_1 h_7", "h_0 h_1^2 h_6^2", "h_0 h_2 h_5^2 h_6"]
        );
        assert_eq!(
            formatted(5, 261),
            ["h_0 D_3(2)", "h_0^3 h_1 h_8", "h_0 h_1^2 h_7^2", "h_0 h_2 h_6^2 h_7"]
        );
    }

    #[test]
    fn small_cases() {
        assert!(formatted(1, 7).is_empty());
        assert_eq!(formatted(1, 1), ["h_0"]);
        assert_eq!(formatted(3, 3), ["h_0^3"]);
        assert!(formatted(5, 14).contains(&"P^1h_1".to_string()));
        assert!(formatted(5, 16).contains(&"P^1h_2".to_string()));
    }

    #[test]
    fn unsupported_rank() {
        assert_eq!(Bidegree::from_stem(6, 1), Err(Error::UnsupportedRank(6)));
        assert_eq!(Bidegree::from_stem(0, 1), Err(Error::UnsupportedRank(0)));
        assert_eq!(Bidegree::from_stem(4, -1), Err(Error::InvalidStem(-1)));
    }

    #[test]
    fn report_order_compares_identifiers() {
        let d = canonicalize([gen(Family::D3, 1)]).unwrap();
        let h = canonicalize([Generator::h(0)]).unwrap();
        assert!(d < h);
        let shorter = canonicalize([Generator::h(0)]).unwrap();
        let longer = canonicalize([Generator::h(0), Generator::h(0)]).unwrap();
        assert!(shorter < longer);
    }
}
