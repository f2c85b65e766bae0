//! Indecomposable generators of Ext in homological degrees 1 through 5.
//!
//! Every indexed family has an internal degree of the form
//! `sum_k 2^(index + offset_k)` for a fixed list of offsets, so degrees are
//! strictly increasing in the index. Enumeration relies on this to stop at
//! the first index whose degree exceeds the target.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    P1h1,
    P1h2,
    H,
    C,
    D,
    E,
    F,
    G,
    P,
    D3,
    PPrime,
    N,
    X,
    D1,
    H1,
    Q3,
    K,
    J,
    T,
    V,
    VPrime,
    U,
}

#[derive(Clone, Copy, Debug)]
enum DegreeFormula {
    /// `sum 2^(index + offset)`.
    Offsets(&'static [u32]),
    /// Non-indexed generator of fixed degree.
    Constant(u64),
}

impl Family {
    /// All families, in canonical factor order.
    pub const ALL: [Family; 22] = [
        Family::P1h1,
        Family::P1h2,
        Family::H,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
        Family::P,
        Family::D3,
        Family::PPrime,
        Family::N,
        Family::X,
        Family::D1,
        Family::H1,
        Family::Q3,
        Family::K,
        Family::J,
        Family::T,
        Family::V,
        Family::VPrime,
        Family::U,
    ];

    /// Identifier used in the reference tables ("h", "D3", "p_prime", ...).
    pub fn name(self) -> &'static str {
        match self {
            Family::P1h1 => "P1h1",
            Family::P1h2 => "P1h2",
            Family::H => "h",
            Family::C => "c",
            Family::D => "d",
            Family::E => "e",
            Family::F => "f",
            Family::G => "g",
            Family::P => "p",
            Family::D3 => "D3",
            Family::PPrime => "p_prime",
            Family::N => "n",
            Family::X => "x",
            Family::D1 => "D1",
            Family::H1 => "H1",
            Family::Q3 => "Q3",
            Family::K => "K",
            Family::J => "J",
            Family::T => "T",
            Family::V => "V",
            Family::VPrime => "V_prime",
            Family::U => "U",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        let alias = match name {
            "p'" => "p_prime",
            "V'" => "V_prime",
            other => other,
        };
        Family::ALL.into_iter().find(|f| f.name() == alias)
    }

    pub fn homological_degree(self) -> u32 {
        match self {
            Family::H => 1,
            Family::C => 3,
            Family::D | Family::E | Family::F | Family::G | Family::P | Family::D3 | Family::PPrime => 4,
            _ => 5,
        }
    }

    /// Position in the canonical factor order; lower sorts first.
    pub fn sort_rank(self) -> i32 {
        match self {
            Family::P1h1 => -2,
            Family::P1h2 => -1,
            Family::H => 0,
            Family::C => 1,
            Family::D => 2,
            Family::E => 3,
            Family::F => 4,
            Family::G => 5,
            Family::P => 6,
            Family::D3 => 7,
            Family::PPrime => 8,
            Family::N => 13,
            Family::X => 14,
            Family::D1 => 15,
            Family::H1 => 16,
            Family::Q3 => 17,
            Family::K => 18,
            Family::J => 19,
            Family::T => 20,
            Family::V => 21,
            Family::VPrime => 22,
            Family::U => 23,
        }
    }

    pub fn indexed(self) -> bool {
        !matches!(self, Family::P1h1 | Family::P1h2)
    }

    pub fn min_index(self) -> u32 {
        match self {
            Family::G => 1,
            _ => 0,
        }
    }

    fn formula(self) -> DegreeFormula {
        use DegreeFormula::*;
        match self {
            Family::H => Offsets(&[0]),
            Family::C => Offsets(&[3, 1, 0]),
            Family::D => Offsets(&[4, 1]),
            Family::E => Offsets(&[4, 2, 0]),
            Family::F => Offsets(&[4, 2, 1]),
            // g_t for t >= 1, i.e. 2^((t-1)+4) + 2^((t-1)+3).
            Family::G => Offsets(&[3, 2]),
            Family::P => Offsets(&[5, 2, 0]),
            Family::D3 => Offsets(&[6, 0]),
            Family::PPrime => Offsets(&[6, 3, 0]),
            Family::N => Offsets(&[5, 2]),
            Family::X => Offsets(&[5, 3, 1]),
            Family::D1 => Offsets(&[5, 4, 2, 0]),
            Family::H1 => Offsets(&[6, 1, 0]),
            Family::Q3 => Offsets(&[6, 3]),
            Family::K => Offsets(&[7, 1]),
            Family::J => Offsets(&[7, 2, 0]),
            Family::T => Offsets(&[7, 4, 1]),
            Family::V => Offsets(&[7, 5, 0]),
            Family::VPrime => Offsets(&[8, 0]),
            Family::U => Offsets(&[8, 3, 0]),
            Family::P1h1 => Constant(14),
            Family::P1h2 => Constant(16),
        }
    }

    pub fn is_valid_index(self, index: u32) -> bool {
        if self.indexed() {
            index >= self.min_index()
        } else {
            index == 0
        }
    }

    /// Internal degree at `index`, or `None` if the index is invalid or the
    /// degree does not fit in a `u64`.
    pub fn degree_at(self, index: u32) -> Option<u64> {
        if !self.is_valid_index(index) {
            return None;
        }
        match self.formula() {
            DegreeFormula::Constant(d) => Some(d),
            DegreeFormula::Offsets(offsets) => offsets.iter().try_fold(0u64, |acc, &o| {
                let shift = index.checked_add(o)?;
                let term = 1u64.checked_shl(shift)?;
                acc.checked_add(term)
            }),
        }
    }

    /// Largest valid index whose degree is at most `degree_cap`.
    pub fn max_index(self, degree_cap: u64) -> Option<u32> {
        let mut best = None;
        let mut index = self.min_index();
        while let Some(d) = self.degree_at(index) {
            if d > degree_cap {
                break;
            }
            best = Some(index);
            if !self.indexed() {
                break;
            }
            index += 1;
        }
        best
    }

    fn display(self, index: u32) -> String {
        match self {
            Family::P1h1 => "P^1h_1".to_string(),
            Family::P1h2 => "P^1h_2".to_string(),
            Family::PPrime => format!("p'_{index}"),
            Family::VPrime => format!("V'_{index}"),
            Family::D3 => format!("D_3({index})"),
            Family::D1 => format!("D_1({index})"),
            Family::H1 => format!("H_1({index})"),
            Family::Q3 => format!("Q_3({index})"),
            Family::K | Family::J | Family::T | Family::V | Family::U => {
                format!("{}({index})", self.name())
            }
            _ => format!("{}_{index}", self.name()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One indexed generator such as `h_3` or `D_3(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    family: Family,
    index: u32,
}

impl Generator {
    pub fn new(family: Family, index: u32) -> Result<Self> {
        if family.degree_at(index).is_none() {
            return Err(Error::InvalidGenerator {
                family: family.name(),
                index,
            });
        }
        Ok(Self { family, index })
    }

    /// Shorthand for `h_i`.
    pub fn h(index: u32) -> Self {
        Self::new(Family::H, index).expect("h index out of range")
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn homological_degree(self) -> u32 {
        self.family.homological_degree()
    }

    pub fn internal_degree(self) -> u64 {
        self.family
            .degree_at(self.index)
            .expect("validated at construction")
    }

    pub fn display_name(self) -> String {
        self.family.display(self.index)
    }

    /// Key used to order monomials in reports: the reference identifier
    /// string, then the index.
    pub(crate) fn report_key(self) -> (&'static str, u32) {
        (self.family.name(), self.index)
    }
}

/// Canonical factor order: family rank, then index.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.family.sort_rank(), self.index).cmp(&(other.family.sort_rank(), other.index))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

pub fn internal_degree(family: Family, index: u32) -> Result<u64> {
    Generator::new(family, index).map(Generator::internal_degree)
}
