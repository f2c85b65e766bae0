//! Heuristic mining of closed-form generator descriptions from a sweep.
//!
//! Each one-dimensional case contributes its representative. Indices are
//! described by the first matching expression in a fixed grammar over
//! `s, t, u`; cases sharing a description are grouped, groups of one are
//! dropped, and surviving groups are re-validated case by case. The
//! condition strings summarize parameter ranges and ignore gaps, so they
//! are a heuristic summary of the per-case records, not a proof.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::families::StuCase;

/// Largest additive constant tried in `p+c` descriptions.
pub const MAX_CONSTANT: u64 = 5;

/// `h` and `c` subscripts of a formatted monomial, in order of appearance.
pub fn extract_indices(pattern: &str) -> (Vec<u64>, Vec<u64>) {
    static H: OnceLock<Regex> = OnceLock::new();
    static C: OnceLock<Regex> = OnceLock::new();
    let h = H.get_or_init(|| Regex::new(r"h_(\d+)").unwrap());
    let c = C.get_or_init(|| Regex::new(r"c_(\d+)").unwrap());
    let grab = |re: &Regex| {
        re.captures_iter(pattern)
            .filter_map(|cap| cap[1].parse().ok())
            .collect()
    };
    (grab(h), grab(c))
}

/// An index written in terms of the sweep parameters, e.g. `u+3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParametricDescription(pub String);

impl ParametricDescription {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn evaluate(&self, s: u64, t: u64, u: u64) -> Option<u64> {
        evaluate_expression(&self.0, s, t, u)
    }
}

/// Evaluates a `+`-separated sum of `s`, `t`, `u` and integer literals.
pub fn evaluate_expression(expr: &str, s: u64, t: u64, u: u64) -> Option<u64> {
    expr.split('+')
        .map(|term| match term.trim() {
            "s" => Some(s),
            "t" => Some(t),
            "u" => Some(u),
            lit => lit.parse::<u64>().ok(),
        })
        .try_fold(0u64, |acc, v| acc.checked_add(v?))
}

/// First match in the priority order `0, s, t, u`, then `u+c, t+c, s+c`
/// for `c = 1..=5`, then `s+t, s+u, t+u, s+t+u`, else the literal.
pub fn parametric_description(value: u64, s: u64, t: u64, u: u64) -> ParametricDescription {
    let d = |x: &str| ParametricDescription(x.to_string());
    if value == 0 {
        return d("0");
    }
    if value == s {
        return d("s");
    }
    if value == t {
        return d("t");
    }
    if value == u {
        return d("u");
    }
    for c in 1..=MAX_CONSTANT {
        if value == u + c {
            return ParametricDescription(format!("u+{c}"));
        }
        if value == t + c {
            return ParametricDescription(format!("t+{c}"));
        }
        if value == s + c {
            return ParametricDescription(format!("s+{c}"));
        }
    }
    if value == s + t {
        return d("s+t");
    }
    if value == s + u {
        return d("s+u");
    }
    if value == t + u {
        return d("t+u");
    }
    if value == s + t + u {
        return d("s+t+u");
    }
    ParametricDescription(value.to_string())
}

pub fn summarize_conditions(triples: &[(u32, u32, u32)]) -> String {
    if triples.is_empty() {
        return "no conditions".to_string();
    }
    let describe = |name: &str, values: Vec<u32>| {
        let mut values = values;
        values.sort_unstable();
        values.dedup();
        match values.as_slice() {
            [] => None,
            [v] => Some(format!("{name} = {v}")),
            [min, ..] => Some(format!("{name} >= {min}")),
        }
    };
    [
        describe("s", triples.iter().map(|c| c.0).collect()),
        describe("t", triples.iter().map(|c| c.1).collect()),
        describe("u", triples.iter().map(|c| c.2).collect()),
    ]
    .into_iter()
    .flatten()
    .collect::<Vec<_>>()
    .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pattern {
    pub pattern: String,
    pub condition: String,
    pub case_count: usize,
    /// Parameters of every supporting case, in sweep order.
    #[serde(skip)]
    pub cases: Vec<(u32, u32, u32)>,
}

pub const FOUR_H_KEY: &str = "h_0h_sh_{s+t}h_{s+t+u}";

fn pattern_key(case: &StuCase) -> Option<String> {
    let gen = case.generator_pattern.as_deref()?;
    let (s, t, u) = (case.s as u64, case.t as u64, case.u as u64);
    let (hs, cs) = extract_indices(gen);
    match (hs.len(), cs.len()) {
        (1, 1) => {
            let h = parametric_description(hs[0], s, t, u);
            let c = parametric_description(cs[0], s, t, u);
            Some(format!("h_{{{}}}c_{{{}}}", h.as_str(), c.as_str()))
        }
        (4, 0) => {
            let mut sorted = hs.clone();
            sorted.sort_unstable();
            let mut expected = vec![0, s, s + t, s + t + u];
            expected.sort_unstable();
            if sorted == expected {
                Some(FOUR_H_KEY.to_string())
            } else {
                let parts: Vec<String> = sorted.iter().map(u64::to_string).collect();
                Some(format!("h_{}", parts.join("_")))
            }
        }
        _ => None,
    }
}

fn split_hc_key(key: &str) -> Option<(&str, &str)> {
    static KEY: OnceLock<Regex> = OnceLock::new();
    let re = KEY.get_or_init(|| Regex::new(r"^h_\{([^}]+)\}c_\{([^}]+)\}").unwrap());
    let caps = re.captures(key)?;
    Some((caps.get(1)?.as_str(), caps.get(2)?.as_str()))
}

fn group_is_consistent(key: &str, cases: &[&StuCase]) -> bool {
    let Some((h_expr, c_expr)) = split_hc_key(key) else {
        return true;
    };
    cases.iter().all(|case| {
        let (s, t, u) = (case.s as u64, case.t as u64, case.u as u64);
        let (hs, cs) = extract_indices(case.generator_pattern.as_deref().unwrap_or(""));
        if hs.len() != 1 || cs.len() != 1 {
            return true;
        }
        evaluate_expression(h_expr, s, t, u) == Some(hs[0])
            && evaluate_expression(c_expr, s, t, u) == Some(cs[0])
    })
}

/// Groups one-dimensional cases by parametric key. Cases without a pattern
/// or with factors other than `h`/`c` are ignored.
pub fn discover_patterns(cases: &[StuCase]) -> Vec<Pattern> {
    let mut order: Vec<String> = Vec::new();
    let mut groups: HashMap<String, Vec<&StuCase>> = HashMap::new();
    for case in cases.iter().filter(|c| c.dimension > 0) {
        let Some(key) = pattern_key(case) else {
            continue;
        };
        groups
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(case);
    }

    let mut patterns: Vec<Pattern> = order
        .into_iter()
        .filter_map(|key| {
            let members = &groups[&key];
            if members.len() < 2 || !group_is_consistent(&key, members) {
                return None;
            }
            let triples: Vec<_> = members.iter().map(|c| (c.s, c.t, c.u)).collect();
            Some(Pattern {
                condition: summarize_conditions(&triples),
                case_count: members.len(),
                cases: triples,
                pattern: key,
            })
        })
        .collect();
    // Stable: ties keep first-seen order.
    patterns.sort_by_key(|p| std::cmp::Reverse(p.case_count));
    patterns
}

const RULE_WIDTH: usize = 80;

pub fn render_theorem(
    patterns: &[Pattern],
    total_cases: usize,
    s_max: u32,
    t_max: u32,
    u_max: u32,
) -> String {
    let rule = "=".repeat(RULE_WIDTH);
    let mut out = String::new();
    let _ = writeln!(out, "{rule}");
    let _ = writeln!(out, "General Form of Generators of Ext^{{4, 4+n_{{s,t,u}}}}_A");
    let _ = writeln!(
        out,
        "Discovered from {total_cases} computed cases for 1 <= s <= {s_max}, 1 <= t <= {t_max}, 1 <= u <= {u_max}"
    );
    let _ = writeln!(out, "{rule}");
    if patterns.is_empty() {
        let _ = writeln!(out, "No significant patterns discovered.");
        return out;
    }
    let _ = writeln!(out, "Ext^{{4, 4+n_{{s,t,u}}}}_A(F_2, F_2) = {{");
    let labels: Vec<String> = patterns.iter().map(|p| format!("<{}>", p.pattern)).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(0);
    for (label, p) in labels.iter().zip(patterns) {
        let pad = width - label.len() + 4;
        let _ = writeln!(out, "  {label}{}if {}", " ".repeat(pad), p.condition);
    }
    let _ = writeln!(out, "  0{}otherwise", " ".repeat(width - 1 + 4));
    let _ = writeln!(out, "}}");
    let _ = writeln!(out, "{rule}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(s: u32, t: u32, u: u32, gen: &str) -> StuCase {
        StuCase {
            s,
            t,
            u,
            n: 0,
            dimension: 1,
            generator_pattern: Some(gen.to_string()),
            representatives: vec![gen.to_string()],
        }
    }

    #[test]
    fn extract_examples() {
        assert_eq!(extract_indices("h_0 c_2"), (vec![0], vec![2]));
        assert_eq!(extract_indices("h_0 h_2 h_4 h_7"), (vec![0, 2, 4, 7], vec![]));
        assert_eq!(extract_indices("h_5"), (vec![5], vec![]));
        assert_eq!(extract_indices("D_3(1)"), (vec![], vec![]));
    }

    #[test]
    fn description_priority() {
        assert_eq!(parametric_description(0, 1, 2, 3).as_str(), "0");
        assert_eq!(parametric_description(7, 1, 2, 4).as_str(), "u+3");
        assert_eq!(parametric_description(6, 2, 2, 2).as_str(), "u+4");
        assert_eq!(parametric_description(2, 2, 2, 2).as_str(), "s");
        assert_eq!(parametric_description(4, 1, 2, 1).as_str(), "t+2");
        assert_eq!(parametric_description(30, 10, 10, 10).as_str(), "s+t+u");
        assert_eq!(parametric_description(99, 1, 1, 1).as_str(), "99");
    }

    #[test]
    fn evaluation_round_trips_descriptions() {
        for s in 1..6u64 {
            for t in 1..6u64 {
                for u in 1..6u64 {
                    for value in 0..20u64 {
                        let d = parametric_description(value, s, t, u);
                        assert_eq!(d.evaluate(s, t, u), Some(value));
                    }
                }
            }
        }
        assert_eq!(evaluate_expression("q+1", 1, 1, 1), None);
    }

    #[test]
    fn condition_summaries() {
        let row: Vec<_> = (2..=10).map(|s| (s, 1, 2)).collect();
        assert_eq!(summarize_conditions(&row), "s >= 2, t = 1, u = 2");
        assert_eq!(summarize_conditions(&[(5, 5, 5)]), "s = 5, t = 5, u = 5");
        let mut cube = Vec::new();
        for s in 2..=10 {
            for t in 2..=10 {
                for u in 2..=10 {
                    cube.push((s, t, u));
                }
            }
        }
        assert_eq!(summarize_conditions(&cube), "s >= 2, t >= 2, u >= 2");
    }

    #[test]
    fn singletons_are_discarded() {
        assert!(discover_patterns(&[]).is_empty());
        assert!(discover_patterns(&[case(2, 1, 2, "h_0 c_2")]).is_empty());
    }

    #[test]
    fn groups_and_validates() {
        let cases = vec![case(2, 1, 2, "h_0 c_2"), case(3, 1, 2, "h_0 c_3")];
        let ps = discover_patterns(&cases);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].pattern, "h_{0}c_{s}");
        assert_eq!(ps[0].condition, "s >= 2, t = 1, u = 2");
        assert_eq!(ps[0].case_count, 2);
    }

    #[test]
    fn four_h_key() {
        let cases = vec![
            case(2, 2, 2, "h_0 h_2 h_4 h_6"),
            case(2, 2, 3, "h_0 h_2 h_4 h_7"),
        ];
        let ps = discover_patterns(&cases);
        assert_eq!(ps[0].pattern, FOUR_H_KEY);
    }

    #[test]
    fn theorem_fallback() {
        let text = render_theorem(&[], 0, 1, 1, 1);
        assert!(text.ends_with("No significant patterns discovered.\n"));
    }

    #[test]
    fn theorem_single_row() {
        let p = Pattern {
            pattern: "h_{0}c_{s}".into(),
            condition: "s >= 2, t = 1, u = 2".into(),
            case_count: 2,
            cases: vec![],
        };
        let text = render_theorem(&[p], 4, 2, 1, 2);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[5], "  <h_{0}c_{s}>    if s >= 2, t = 1, u = 2");
        assert_eq!(lines[6], "  0               otherwise");
        assert_eq!(lines[7], "}");
    }
}
