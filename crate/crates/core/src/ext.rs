//! The basis pipeline: enumerate the monomials of a bidegree, impose the
//! relations, and read a basis of the quotient off the reduced relation
//! matrix.
//!
//! Representatives are the monomials at the non-pivot columns of the
//! reduced matrix. Every run also recomputes them from the right kernel
//! (leading positions of its echelon basis) and asserts the two agree.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gf2::{self, rref, BitMatrix, BitVector, Rref};
use crate::monomial::{enumerate_monomials, Bidegree, Monomial};
use crate::relations::{relation_matrix, MonomialSpace, RelationInstance, RelationOptions};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExtOptions {
    pub paper_compat: bool,
}

/// One nonzero row of the reduced relation matrix, read as
/// `lhs = rhs[0] + rhs[1] + ...` (or `lhs = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplifiedRelation {
    pub lhs: Monomial,
    pub rhs: Vec<Monomial>,
}

impl SimplifiedRelation {
    pub fn render(&self) -> String {
        if self.rhs.is_empty() {
            format!("{} = 0", self.lhs)
        } else {
            let rhs: Vec<String> = self.rhs.iter().map(Monomial::format).collect();
            format!("{} = {}", self.lhs, rhs.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub representative: Monomial,
    /// Representative first, then every monomial identified with it.
    pub equivalents: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtBasisReport {
    pub query: Bidegree,
    pub potential_generators: Vec<Monomial>,
    pub relations: Vec<RelationInstance>,
    pub relation_rank: usize,
    pub dimension: usize,
    pub simplified_relations: Vec<SimplifiedRelation>,
    pub basis: Vec<BasisElement>,
}

/// Quotient basis as computed from a relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub dimension: usize,
    pub representative_columns: Vec<usize>,
}

/// Quotient basis from the right kernel; panics if it disagrees with the
/// non-pivot columns of the reduced matrix.
pub fn quotient_basis_dual_check(matrix: &BitMatrix) -> QuotientBasis {
    let reduced = rref(matrix);
    dual_check_with(matrix, &reduced)
}

fn dual_check_with(matrix: &BitMatrix, reduced: &Rref) -> QuotientBasis {
    let kernel = gf2::right_kernel_basis(matrix);
    let leading: Vec<usize> = kernel
        .iter()
        .map(|v| gf2::kernel_leading_position(v).expect("kernel basis vectors are nonzero"))
        .collect();
    let free = reduced.free_columns();
    assert_eq!(
        leading, free,
        "kernel leading positions disagree with non-pivot columns"
    );
    assert_eq!(reduced.rank() + kernel.len(), matrix.width(), "rank-nullity");
    QuotientBasis {
        dimension: kernel.len(),
        representative_columns: free,
    }
}

fn class_of(rep: usize, monomials: &[Monomial], reduced: &Rref) -> Vec<Monomial> {
    let width = monomials.len();
    let mut class = vec![monomials[rep].clone()];
    for (col, m) in monomials.iter().enumerate() {
        if col == rep {
            continue;
        }
        let mut diff = BitVector::unit(width, rep);
        diff.flip(col);
        if reduced.reduce(&diff).is_zero() {
            class.push(m.clone());
        }
    }
    class
}

/// All monomials identified with `rep` by the relations, `rep` first.
pub fn equivalence_class(
    rep: &Monomial,
    monomials: &[Monomial],
    relation_matrix: &BitMatrix,
) -> Option<Vec<Monomial>> {
    let col = monomials.iter().position(|m| m == rep)?;
    Some(class_of(col, monomials, &rref(relation_matrix)))
}

pub fn compute_ext_basis(k: u32, n: i64, options: ExtOptions) -> Result<ExtBasisReport> {
    let query = Bidegree::from_stem(k, n)?;
    Ok(compute_at(query, options))
}

pub fn compute_at(query: Bidegree, options: ExtOptions) -> ExtBasisReport {
    let monomials = enumerate_monomials(query);
    let space = MonomialSpace::new(query.k(), query.t(), monomials);
    let (matrix, relations) = relation_matrix(
        &space,
        RelationOptions {
            paper_compat: options.paper_compat,
        },
    );
    let reduced = rref(&matrix);
    let quotient = dual_check_with(&matrix, &reduced);
    let monomials = space.monomials();

    let simplified_relations = reduced
        .reduced
        .rows()
        .iter()
        .map(|row| {
            let mut cols = row.ones();
            let lhs = monomials[cols.next().expect("reduced rows are nonzero")].clone();
            SimplifiedRelation {
                lhs,
                rhs: cols.map(|c| monomials[c].clone()).collect(),
            }
        })
        .collect();

    let basis = quotient
        .representative_columns
        .iter()
        .map(|&col| BasisElement {
            representative: monomials[col].clone(),
            equivalents: class_of(col, monomials, &reduced),
        })
        .collect();

    let relation_rank = reduced.rank();
    ExtBasisReport {
        query,
        potential_generators: monomials.to_vec(),
        relations,
        relation_rank,
        dimension: quotient.dimension,
        simplified_relations,
        basis,
    }
}

/// Machine-readable form of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub k: u32,
    pub n: u64,
    pub t: u64,
    pub potential_generators: Vec<String>,
    pub relation_rank: usize,
    pub dimension: usize,
    pub simplified_relations: Vec<RelationJson>,
    pub basis: Vec<BasisJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub lhs: String,
    pub rhs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub representative: String,
    pub equivalents: Vec<String>,
}

fn names(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(Monomial::format).collect()
}

impl ExtBasisReport {
    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            k: self.query.k(),
            n: self.query.n(),
            t: self.query.t(),
            potential_generators: names(&self.potential_generators),
            relation_rank: self.relation_rank,
            dimension: self.dimension,
            simplified_relations: self
                .simplified_relations
                .iter()
                .map(|r| RelationJson {
                    lhs: r.lhs.format(),
                    rhs: names(&r.rhs),
                })
                .collect(),
            basis: self
                .basis
                .iter()
                .map(|b| BasisJson {
                    representative: b.representative.format(),
                    equivalents: names(&b.equivalents),
                })
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let (k, t) = (self.query.k(), self.query.t());
        let mut out = String::new();
        let _ = writeln!(out, "--- Calculating basis for Ext_A^({k}, {t}) ---");
        if self.potential_generators.is_empty() {
            let _ = writeln!(out, "No potential generators found. Ext group is trivial.");
            return out;
        }
        let _ = writeln!(
            out,
            "\nFound {} potential generators (before relations):",
            self.potential_generators.len()
        );
        for g in &self.potential_generators {
            let _ = writeln!(out, "  {g}");
        }
        let _ = writeln!(out, "\nDimension of relation space: {}", self.relation_rank);
        let _ = writeln!(out, "Dimension of Ext_A^({k}, {t}) = {}", self.dimension);
        if !self.simplified_relations.is_empty() {
            let _ = writeln!(out, "\nSimplified Adem Relations:");
            for r in &self.simplified_relations {
                let _ = writeln!(out, "  -> {}", r.render());
            }
        }
        if !self.basis.is_empty() {
            let _ = writeln!(out, "\nBasis elements:");
            for b in &self.basis {
                let _ = writeln!(out, "  {}", names(&b.equivalents).join(" = "));
            }
        }
        out
    }
}
