//! Relation vectors over the monomials of one bidegree.
//!
//! A vanishing relation `m = 0` becomes the unit vector of `m`; an identity
//! `a = b` becomes `e_a + e_b`. Three sources are stacked: the general
//! relations among the `h_i`, the `h_j c_i = 0` family, and the 39-entry
//! table of rank 5 products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::catalog::{Family, Generator};
use crate::gf2::{BitMatrix, BitVector};
use crate::monomial::{canonicalize, Monomial};

/// The monomials of a bidegree together with their column indices.
#[derive(Clone, Debug)]
pub struct MonomialSpace {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    k: u32,
    t: u64,
}

impl MonomialSpace {
    /// `monomials` must be distinct and share one bidegree `(k, t)`.
    pub fn new(k: u32, t: u64, monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect::<HashMap<_, _>>();
        assert_eq!(index.len(), monomials.len(), "duplicate monomials");
        Self {
            monomials,
            index,
            k,
            t,
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn unit(&self, column: usize) -> BitVector {
        BitVector::unit(self.len(), column)
    }
}

/// Where a relation instance came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationOrigin {
    /// `h_i^3 = h_{i-1}^2 h_{i+1}`.
    HCube { i: u32 },
    /// `h_i h_{i+1} = 0`.
    HAdjacent { i: u32 },
    /// `h_i h_{i+2}^2 = 0`.
    HSkipSquare { i: u32 },
    /// `h_i^2 h_{i+3}^2 = 0`.
    HSquareGap { i: u32 },
    /// `h_j c_i = 0`.
    HC { h: u32, c: u32 },
    /// Entry `entry` (0-based) of [`RANK5_TABLE`] at parameter `j`.
    Rank5 { entry: usize, j: u32 },
}

impl fmt::Display for RelationOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RelationOrigin::HCube { i } => write!(f, "h_{i}^3 = h_{}^2 h_{}", i - 1, i + 1),
            RelationOrigin::HAdjacent { i } => write!(f, "h_{i} h_{} = 0", i + 1),
            RelationOrigin::HSkipSquare { i } => write!(f, "h_{i} h_{}^2 = 0", i + 2),
            RelationOrigin::HSquareGap { i } => write!(f, "h_{i}^2 h_{}^2 = 0", i + 3),
            RelationOrigin::HC { h, c } => write!(f, "h_{h} c_{c} = 0"),
            RelationOrigin::Rank5 { entry, j } => write!(f, "rank-5 entry {} (j = {j})", entry + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub vector: BitVector,
    pub origin: RelationOrigin,
    /// One monomial for a vanishing relation, two for an identity.
    pub terms: Vec<Monomial>,
}

/// A factor `family_{j + offset}` of a parametrized product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexedFactor {
    pub family: Family,
    pub offset: i32,
}

const fn h(offset: i32) -> IndexedFactor {
    IndexedFactor {
        family: Family::H,
        offset,
    }
}

const fn x(family: Family, offset: i32) -> IndexedFactor {
    IndexedFactor { family, offset }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank5Entry {
    Vanish(&'static [IndexedFactor]),
    Equal(&'static [IndexedFactor], &'static [IndexedFactor]),
}

impl Rank5Entry {
    fn sides(&self) -> impl Iterator<Item = &'static [IndexedFactor]> {
        let (a, b) = match *self {
            Rank5Entry::Vanish(a) => (a, None),
            Rank5Entry::Equal(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }

    /// Smallest `j` at which every factor index is valid.
    pub fn min_j(&self) -> u32 {
        self.sides()
            .flatten()
            .map(|f| f.family.min_index() as i32 - f.offset)
            .max()
            .unwrap_or(0)
            .max(0) as u32
    }

    /// The side(s) instantiated at `j`, or `None` below [`Self::min_j`].
    pub fn instantiate(&self, j: u32) -> Option<Vec<Monomial>> {
        self.sides()
            .map(|side| {
                let factors = side
                    .iter()
                    .map(|f| {
                        let index = u32::try_from(j as i64 + f.offset as i64).ok()?;
                        Generator::new(f.family, index).ok()
                    })
                    .collect::<Option<Vec<_>>>()?;
                canonicalize(factors).ok()
            })
            .collect()
    }
}

use Family::{PPrime, C, D, D3, E, F, G, P};

/// Products of rank 1, 3 and 4 generators landing in rank 5: 25 vanishing
/// products followed by 14 identities.
pub const RANK5_TABLE: [Rank5Entry; 39] = [
    Rank5Entry::Vanish(&[h(4), h(4), x(C, 0)]),
    Rank5Entry::Vanish(&[h(0), h(3), x(C, 2)]),
    Rank5Entry::Vanish(&[h(1), h(1), x(C, 0)]),
    Rank5Entry::Vanish(&[h(0), x(D, 1)]),
    Rank5Entry::Vanish(&[h(3), x(D, 0)]),
    Rank5Entry::Vanish(&[h(4), x(D, 0)]),
    Rank5Entry::Vanish(&[h(0), x(E, 1)]),
    Rank5Entry::Vanish(&[h(4), x(E, 0)]),
    Rank5Entry::Vanish(&[h(1), x(F, 0)]),
    Rank5Entry::Vanish(&[h(3), x(F, 0)]),
    Rank5Entry::Vanish(&[h(4), x(F, 0)]),
    Rank5Entry::Vanish(&[h(3), x(G, 1)]),
    Rank5Entry::Vanish(&[h(0), x(P, 1)]),
    Rank5Entry::Vanish(&[h(1), x(P, 0)]),
    Rank5Entry::Vanish(&[h(2), x(P, 0)]),
    Rank5Entry::Vanish(&[h(4), x(P, 0)]),
    Rank5Entry::Vanish(&[h(5), x(P, 0)]),
    Rank5Entry::Vanish(&[h(0), x(D3, 1)]),
    Rank5Entry::Vanish(&[h(0), x(D3, 0)]),
    Rank5Entry::Vanish(&[h(5), x(D3, 0)]),
    Rank5Entry::Vanish(&[h(6), x(D3, 0)]),
    Rank5Entry::Vanish(&[h(0), x(PPrime, 1)]),
    Rank5Entry::Vanish(&[h(2), x(PPrime, 0)]),
    Rank5Entry::Vanish(&[h(3), x(PPrime, 0)]),
    Rank5Entry::Vanish(&[h(6), x(PPrime, 0)]),
    Rank5Entry::Equal(&[h(4), h(1), x(C, 0)], &[h(3), x(E, 0)]),
    Rank5Entry::Equal(&[h(4), h(0), x(C, 3)], &[h(5), x(PPrime, 0)]),
    Rank5Entry::Equal(&[h(5), h(5), x(C, 0)], &[h(1), x(PPrime, 0)]),
    Rank5Entry::Equal(&[h(0), x(D, 2)], &[h(3), x(D3, 0)]),
    Rank5Entry::Equal(&[h(1), x(D, 1)], &[h(0), x(P, 0)]),
    Rank5Entry::Equal(&[h(2), x(D, 1)], &[h(4), x(G, 1)]),
    Rank5Entry::Equal(&[h(2), x(D, 0)], &[h(0), x(E, 0)]),
    Rank5Entry::Equal(&[h(1), x(E, 0)], &[h(0), x(F, 0)]),
    Rank5Entry::Equal(&[h(1), x(E, 0)], &[h(-1), h(-1), x(C, 1)]),
    Rank5Entry::Equal(&[h(2), x(E, 0)], &[h(0), x(G, 1)]),
    Rank5Entry::Equal(&[h(0), x(F, 2)], &[h(4), x(PPrime, 0)]),
    Rank5Entry::Equal(&[h(0), x(F, 1)], &[h(3), x(P, 0)]),
    Rank5Entry::Equal(&[h(2), x(F, 0)], &[h(1), x(G, 1)]),
    Rank5Entry::Equal(&[h(3), x(G, 2)], &[h(5), x(G, 1)]),
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RelationOptions {
    /// Apply the general `h` relations only from k = 3.
    pub paper_compat: bool,
}

fn vanishing(space: &MonomialSpace, column: usize, origin: RelationOrigin) -> RelationInstance {
    RelationInstance {
        vector: space.unit(column),
        origin,
        terms: vec![space.monomials()[column].clone()],
    }
}

fn identity(
    space: &MonomialSpace,
    a: usize,
    b: usize,
    origin: RelationOrigin,
) -> Option<RelationInstance> {
    if a == b {
        return None;
    }
    let mut vector = space.unit(a);
    vector.flip(b);
    Some(RelationInstance {
        vector,
        origin,
        terms: vec![space.monomials()[a].clone(), space.monomials()[b].clone()],
    })
}

fn h_multiplicities(m: &Monomial) -> BTreeMap<u32, usize> {
    let mut counts = BTreeMap::new();
    for i in m.h_indices() {
        *counts.entry(i).or_insert(0) += 1;
    }
    counts
}

/// Replaces one `h_i^3` by `h_{i-1}^2 h_{i+1}`. Requires `i >= 1` and
/// `h_i^3 | m`.
pub fn rewrite_cube(m: &Monomial, i: u32) -> Monomial {
    let mut removed = 0;
    let mut factors: Vec<Generator> = m
        .factors()
        .iter()
        .copied()
        .filter(|g| {
            if removed < 3 && g.family() == Family::H && g.index() == i {
                removed += 1;
                false
            } else {
                true
            }
        })
        .collect();
    assert_eq!(removed, 3, "no h_{i}^3 to rewrite");
    factors.extend([Generator::h(i - 1), Generator::h(i - 1), Generator::h(i + 1)]);
    canonicalize(factors).expect("nonempty")
}

pub fn general_h_relations(space: &MonomialSpace) -> Vec<RelationInstance> {
    let counts: Vec<BTreeMap<u32, usize>> = space.monomials().iter().map(h_multiplicities).collect();
    let count = |col: usize, i: u32| counts[col].get(&i).copied().unwrap_or(0);
    let mut out = Vec::new();

    for (col, m) in space.monomials().iter().enumerate() {
        for (&i, &c) in &counts[col] {
            if i >= 1 && c >= 3 {
                let target = rewrite_cube(m, i);
                // Degree-preserving, so the target is always enumerated.
                let other = space
                    .index_of(&target)
                    .expect("rewritten monomial missing from the bidegree");
                out.extend(identity(space, col, other, RelationOrigin::HCube { i }));
            }
        }
    }
    for (col, h) in counts.iter().enumerate() {
        for &i in h.keys() {
            if count(col, i + 1) >= 1 {
                out.push(vanishing(space, col, RelationOrigin::HAdjacent { i }));
            }
        }
    }
    for (col, h) in counts.iter().enumerate() {
        for &i in h.keys() {
            if count(col, i + 2) >= 2 {
                out.push(vanishing(space, col, RelationOrigin::HSkipSquare { i }));
            }
        }
    }
    for (col, h) in counts.iter().enumerate() {
        for (&i, &c) in h {
            if c >= 2 && count(col, i + 3) >= 2 {
                out.push(vanishing(space, col, RelationOrigin::HSquareGap { i }));
            }
        }
    }
    out
}

pub fn c_product_relations(space: &MonomialSpace) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for (col, m) in space.monomials().iter().enumerate() {
        let hs = m.h_indices();
        for c in m.indices_of(Family::C) {
            let killers = [c.checked_sub(1), Some(c), Some(c + 2), Some(c + 3)];
            for h in killers.into_iter().flatten() {
                if hs.contains(&h) {
                    out.push(vanishing(space, col, RelationOrigin::HC { h, c }));
                }
            }
        }
    }
    out
}

pub fn rank5_relations(space: &MonomialSpace) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for (entry_no, entry) in RANK5_TABLE.iter().enumerate() {
        let mut j = entry.min_j();
        while let Some(sides) = entry.instantiate(j) {
            let degree = sides[0].internal_degree();
            if degree > space.t() {
                break;
            }
            let origin = RelationOrigin::Rank5 { entry: entry_no, j };
            let columns: Vec<Option<usize>> = sides.iter().map(|m| space.index_of(m)).collect();
            match columns.as_slice() {
                [Some(a)] => out.push(vanishing(space, *a, origin)),
                [Some(a), Some(b)] => out.extend(identity(space, *a, *b, origin)),
                _ => {}
            }
            j += 1;
        }
    }
    out
}

/// All relation instances for the bidegree, stacked as matrix rows.
pub fn relation_matrix(
    space: &MonomialSpace,
    options: RelationOptions,
) -> (BitMatrix, Vec<RelationInstance>) {
    let k = space.k();
    let h_from = if options.paper_compat { 3 } else { 2 };
    let mut instances = Vec::new();
    if k >= h_from {
        instances.extend(general_h_relations(space));
    }
    if k >= 4 {
        instances.extend(c_product_relations(space));
    }
    if k == 5 {
        instances.extend(rank5_relations(space));
    }
    instances.retain(|r| !r.vector.is_zero());
    let rows = instances.iter().map(|r| r.vector.clone()).collect();
    let matrix = BitMatrix::from_rows(space.len(), rows).expect("rows share the space width");
    (matrix, instances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::enumerate_in;

    fn space(k: u32, t: u64) -> MonomialSpace {
        MonomialSpace::new(k, t, enumerate_in(k, t).unwrap())
    }

    fn formatted_terms(rs: &[RelationInstance]) -> Vec<Vec<String>> {
        rs.iter()
            .map(|r| r.terms.iter().map(|m| m.format()).collect())
            .collect()
    }

    #[test]
    fn table_shape() {
        let vanish = RANK5_TABLE
            .iter()
            .filter(|e| matches!(e, Rank5Entry::Vanish(_)))
            .count();
        assert_eq!(vanish, 25);
        assert_eq!(RANK5_TABLE.len() - vanish, 14);
    }

    #[test]
    fn table_guards() {
        // h_{j+1} e_j = h_{j-1}^2 c_{j+1} needs j >= 1.
        assert_eq!(RANK5_TABLE[33].min_j(), 1);
        assert!(RANK5_TABLE[33].instantiate(0).is_none());
        for entry in &RANK5_TABLE {
            if !std::ptr::eq(entry, &RANK5_TABLE[33]) {
                assert_eq!(entry.min_j(), 0);
            }
        }
    }

    #[test]
    fn table_entries_are_homogeneous() {
        for (n, entry) in RANK5_TABLE.iter().enumerate() {
            for j in entry.min_j()..20 {
                let sides = entry.instantiate(j).unwrap();
                for side in &sides {
                    assert_eq!(side.homological_degree(), 5, "entry {n}");
                }
                if let [a, b] = sides.as_slice() {
                    assert_eq!(a.internal_degree(), b.internal_degree(), "entry {n} j {j}");
                }
            }
        }
    }

    #[test]
    fn adjacent_h_kill_at_130() {
        let s = space(4, 130);
        let rs = general_h_relations(&s);
        assert_eq!(formatted_terms(&rs), vec![vec!["h_1 h_5^2 h_6".to_string()]]);
        assert_eq!(rs[0].origin, RelationOrigin::HAdjacent { i: 5 });
    }

    #[test]
    fn h0_cube_survives() {
        let s = space(5, 67);
        let rs = general_h_relations(&s);
        assert!(rs
            .iter()
            .all(|r| r.terms.iter().all(|m| m.format() != "h_0^3 h_5^2")));
    }

    #[test]
    fn cube_rewrite_at_5_8() {
        let s = space(5, 8);
        let cubes: Vec<_> = general_h_relations(&s)
            .into_iter()
            .filter(|r| matches!(r.origin, RelationOrigin::HCube { .. }))
            .collect();
        assert_eq!(
            formatted_terms(&cubes),
            vec![vec!["h_0^2 h_1^3".to_string(), "h_0^4 h_2".to_string()]]
        );
        assert_eq!(cubes[0].vector.count_ones(), 2);
    }

    #[test]
    fn hc_vanishing() {
        assert!(c_product_relations(&space(4, 45))
            .iter()
            .all(|r| r.terms[0].format() != "h_0 h_2 h_3 h_5"));
        let at48 = c_product_relations(&space(4, 48));
        assert!(at48
            .iter()
            .any(|r| r.terms[0].format() == "h_2 c_2" && r.origin == RelationOrigin::HC { h: 2, c: 2 }));
        let at46 = c_product_relations(&space(4, 46));
        assert!(at46
            .iter()
            .any(|r| r.terms[0].format() == "h_1 c_2" && r.origin == RelationOrigin::HC { h: 1, c: 2 }));
    }

    #[test]
    fn rank5_identity_at_29() {
        let s = space(5, 29);
        let rs = rank5_relations(&s);
        let hit = rs
            .iter()
            .find(|r| r.origin == RelationOrigin::Rank5 { entry: 25, j: 0 })
            .expect("h_4 h_1 c_0 = h_3 e_0 should fire");
        assert_eq!(hit.vector.count_ones(), 2);
        let names: Vec<String> = hit.terms.iter().map(|m| m.format()).collect();
        assert_eq!(names, ["h_1 h_4 c_0", "h_3 e_0"]);
    }

    #[test]
    fn h1_d3_0_untouched() {
        let s = space(5, 67);
        let (_, rs) = relation_matrix(&s, RelationOptions::default());
        assert!(rs.iter().all(|r| r.terms.iter().all(|m| m.format() != "h_1 D_3(0)")));
    }

    #[test]
    fn rank_one_has_no_relations() {
        let (m, rs) = relation_matrix(&space(1, 8), RelationOptions::default());
        assert_eq!(m.num_rows(), 0);
        assert!(rs.is_empty());
    }

    #[test]
    fn paper_compat_skips_rank_two() {
        let s = space(2, 3);
        let (strict, _) = relation_matrix(&s, RelationOptions::default());
        let (compat, _) = relation_matrix(&s, RelationOptions { paper_compat: true });
        assert_eq!(strict.rank(), 1);
        assert_eq!(compat.num_rows(), 0);
    }

    #[test]
    fn relation_matrix_ranks() {
        assert_eq!(relation_matrix(&space(4, 130), RelationOptions::default()).0.rank(), 1);
        assert_eq!(relation_matrix(&space(5, 133), RelationOptions::default()).0.rank(), 3);
    }
}
