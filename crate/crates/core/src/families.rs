//! Parametric stem families and grid sweeps over them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::{compute_at, ExtOptions};
use crate::monomial::Bidegree;

fn pow2(e: i64) -> Option<u64> {
    u32::try_from(e).ok().and_then(|e| 1u64.checked_shl(e))
}

/// `n_{s,t,u} = 2^(s+t+u) + 2^(s+t) + 2^s - 3`.
pub fn stem_stu(s: i64, t: i64, u: i64) -> Result<u64> {
    if s < 0 || t < 0 || u < 0 {
        return Err(Error::InvalidParameter(
            "s, t, u should be >= 0".to_string(),
        ));
    }
    let overflow = || Error::InvalidParameter(format!("n_{{{s},{t},{u}}} overflows"));
    let a = pow2(s + t + u).ok_or_else(overflow)?;
    let b = pow2(s + t).ok_or_else(overflow)?;
    let c = pow2(s).ok_or_else(overflow)?;
    a.checked_add(b)
        .and_then(|x| x.checked_add(c))
        .map(|x| x - 3)
        .ok_or_else(overflow)
}

/// `n = 2^(s+1) - m` for `m` in {2, 3}.
pub fn stem_power(s: i64, m: i64) -> Result<u64> {
    if m != 2 && m != 3 {
        return Err(Error::InvalidParameter("m must be 2 or 3".to_string()));
    }
    if s < 0 {
        return Err(Error::InvalidParameter("s should be >= 0".to_string()));
    }
    let p = pow2(s + 1).ok_or_else(|| Error::InvalidParameter(format!("2^{} overflows", s + 1)))?;
    let n = p as i128 - m as i128;
    if n < 0 {
        return Err(Error::InvalidStem(n as i64));
    }
    Ok(n as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StuCase {
    pub s: u32,
    pub t: u32,
    pub u: u32,
    pub n: u64,
    pub dimension: usize,
    /// The basis representative, recorded only for one-dimensional groups.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_pattern: Option<String>,
    /// Every basis representative, in report order.
    #[serde(default)]
    pub representatives: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTotals {
    pub cases: usize,
    pub nonzero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub k: u32,
    pub s_max: u32,
    pub t_max: u32,
    pub u_max: u32,
    /// Ascending lexicographic (s, t, u).
    pub cases: Vec<StuCase>,
    pub totals: SweepTotals,
}

impl SweepResult {
    /// Cases with a one-dimensional group, the input of the pattern miner.
    pub fn one_dimensional(&self) -> Vec<StuCase> {
        self.cases
            .iter()
            .filter(|c| c.generator_pattern.is_some())
            .cloned()
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    pub ext: ExtOptions,
}

pub fn compute_case(k: u32, s: u32, t: u32, u: u32, options: ExtOptions) -> Result<StuCase> {
    let wrap = |e: Error| Error::Case {
        s,
        t,
        u,
        source: Box::new(e),
    };
    let n = stem_stu(s as i64, t as i64, u as i64).map_err(wrap)?;
    let n_signed = i64::try_from(n).map_err(|_| wrap(Error::InvalidParameter("stem too large".into())))?;
    let query = Bidegree::from_stem(k, n_signed).map_err(wrap)?;
    let report = compute_at(query, options);
    let representatives: Vec<String> = report
        .basis
        .iter()
        .map(|b| b.representative.format())
        .collect();
    let generator_pattern = (report.dimension == 1).then(|| representatives[0].clone());
    Ok(StuCase {
        s,
        t,
        u,
        n,
        dimension: report.dimension,
        generator_pattern,
        representatives,
    })
}

pub fn sweep_stu(
    k: u32,
    s_max: u32,
    t_max: u32,
    u_max: u32,
    options: SweepOptions,
) -> Result<SweepResult> {
    if s_max < 1 || t_max < 1 || u_max < 1 {
        return Err(Error::InvalidParameter(
            "sweep bounds must be >= 1".to_string(),
        ));
    }
    Bidegree::from_stem(k, 0)?;
    let grid: Vec<(u32, u32, u32)> = (1..=s_max)
        .flat_map(|s| (1..=t_max).flat_map(move |t| (1..=u_max).map(move |u| (s, t, u))))
        .collect();
    let run = || -> Result<Vec<StuCase>> {
        grid.par_iter()
            .map(|&(s, t, u)| compute_case(k, s, t, u, options.ext))
            .collect()
    };
    let mut cases = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    cases.sort_by_key(|c| (c.s, c.t, c.u));
    let nonzero = cases.iter().filter(|c| c.dimension > 0).count();
    let totals = SweepTotals {
        cases: cases.len(),
        nonzero,
    };
    Ok(SweepResult {
        k,
        s_max,
        t_max,
        u_max,
        cases,
        totals,
    })
}
