//! Problem stanzas of the CTB sidecar syntax.
//!
//! ```text
//! DECOMP <name>
//! CLASSES <label>...
//! TARGET <degree>
//! CANDIDATE <name> <degree> <value-or-?>...
//! MAXDISTINCT <k> {<label>,...}
//! FIXED <label> <value>
//! BOUND <candidate> <max>
//! EXCLUDE {<m>,...}
//! EXPECT {<m>,...}
//! END
//!
//! SYLOW <name>
//! GROUP <table-or-order-id> | GROUPORDER <n>
//! PRIME <p>
//! [SYLOWORDER <n>] [MUSTDIVIDE <n>] [DIVISIBLEBY <n>] [LOWERBOUND <n>] [PROPER] [CLAIMEDPRE <count>]
//! END
//!
//! FUSIONPROBLEM <sub-id> <big-id>
//! [SEED <entry>...]
//! END
//!
//! POWERPROBLEM <table-id>
//! BLANK <p> <class>...
//! QUADRATIC <d> <class>...
//! END
//! ```

use super::decomposition::{Candidate, Constraint, DecompositionProblem};
use super::powermaps::QuadraticField;
use super::sylow::SylowProblem;
use crate::cyclonum::BigInt;
use crate::tables::{
    parse_big, parse_entries, parse_value, CtbError, PartialClassMap, RawBlock, RawLine, TableHead,
};

fn brace_list(l: &RawLine, s: &str) -> Result<Vec<String>, CtbError> {
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| l.error(format!("expected a {{...}} list, found {s}")))?;
    Ok(inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect())
}

fn block_name(block: &RawBlock, what: &str, words: usize) -> Result<Vec<String>, CtbError> {
    let parts: Vec<String> = block.name.split_whitespace().map(String::from).collect();
    if parts.len() != words {
        return Err(CtbError::syntax(
            block.line,
            format!("{what} expects {words} name argument(s)"),
        ));
    }
    Ok(parts)
}

fn parse_u64(l: &RawLine, s: &str) -> Result<u64, CtbError> {
    s.parse()
        .map_err(|_| l.error(format!("expected a nonnegative integer, found {s}")))
}

/// A decomposition problem with the multiplicity vectors it is expected to produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompSpec {
    pub problem: DecompositionProblem,
    /// `None` when the file states no expectation.
    pub expect: Option<Vec<Vec<u64>>>,
}

pub fn parse_decomp(block: &RawBlock) -> Result<DecompSpec, CtbError> {
    let name = block_name(block, "DECOMP", 1)?.remove(0);
    let mut classes: Vec<String> = Vec::new();
    let mut target = None;
    let mut candidates = Vec::new();
    let mut pending: Vec<(&RawLine, &str)> = Vec::new();
    let mut expect: Option<Vec<Vec<u64>>> = None;
    for l in &block.lines {
        match l.keyword() {
            "CLASSES" => classes = l.args().to_vec(),
            "TARGET" => {
                l.arity(1)?;
                target = Some(parse_big(l.line, l.arg(0)?)?);
            }
            "CANDIDATE" => {
                let args = l.args();
                if args.len() != classes.len() + 2 {
                    return Err(l.error(format!(
                        "CANDIDATE expects a name, a degree and {} values",
                        classes.len()
                    )));
                }
                let values = args[2..]
                    .iter()
                    .map(|v| {
                        if v == "?" {
                            Ok(None)
                        } else {
                            parse_value(l.line, v).map(Some)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                candidates.push(Candidate {
                    name: args[0].clone(),
                    degree: parse_big(l.line, &args[1])?,
                    values,
                });
            }
            "MAXDISTINCT" | "FIXED" | "BOUND" | "EXCLUDE" => pending.push((l, l.keyword())),
            "EXPECT" => {
                l.arity(1)?;
                let v = brace_list(l, l.arg(0)?)?
                    .iter()
                    .map(|x| parse_u64(l, x))
                    .collect::<Result<Vec<_>, _>>()?;
                expect.get_or_insert_with(Vec::new).push(v);
            }
            "EXPECTNONE" => expect = Some(Vec::new()),
            other => return Err(l.error(format!("unexpected {other} in DECOMP"))),
        }
    }
    let class_index = |l: &RawLine, s: &str| {
        classes
            .iter()
            .position(|c| c == s)
            .ok_or_else(|| l.error(format!("unknown designated class {s}")))
    };
    let mut constraints = Vec::new();
    for (l, kw) in pending {
        let c = match kw {
            "MAXDISTINCT" => {
                l.arity(2)?;
                let k = parse_u64(l, l.arg(0)?)? as usize;
                let cs = brace_list(l, l.arg(1)?)?
                    .iter()
                    .map(|s| class_index(l, s))
                    .collect::<Result<Vec<_>, _>>()?;
                Constraint::MaxDistinctValues { classes: cs, k }
            }
            "FIXED" => {
                l.arity(2)?;
                Constraint::FixedValue {
                    class: class_index(l, l.arg(0)?)?,
                    value: parse_value(l.line, l.arg(1)?)?,
                }
            }
            "BOUND" => {
                l.arity(2)?;
                let cand = l.arg(0)?;
                let candidate = candidates
                    .iter()
                    .position(|c: &Candidate| c.name == cand)
                    .ok_or_else(|| l.error(format!("unknown candidate {cand}")))?;
                Constraint::MultiplicityBound {
                    candidate,
                    max: parse_u64(l, l.arg(1)?)?,
                }
            }
            _ => {
                l.arity(1)?;
                let v = brace_list(l, l.arg(0)?)?
                    .iter()
                    .map(|x| parse_u64(l, x))
                    .collect::<Result<Vec<_>, _>>()?;
                Constraint::ExcludeSolution(v)
            }
        };
        constraints.push(c);
    }
    let target_degree =
        target.ok_or_else(|| CtbError::syntax(block.line, "DECOMP without TARGET"))?;
    let problem = DecompositionProblem {
        name,
        classes,
        candidates,
        target_degree,
        constraints,
    };
    problem
        .validate()
        .map_err(|e| CtbError::syntax(block.line, e.to_string()))?;
    Ok(DecompSpec { problem, expect })
}

/// `lookup` resolves a `GROUP` id to its order.
pub fn parse_sylow(
    block: &RawBlock,
    lookup: impl Fn(&str) -> Option<BigInt>,
) -> Result<SylowProblem, CtbError> {
    let name = block_name(block, "SYLOW", 1)?.remove(0);
    let mut order = None;
    let mut p = None;
    let mut sylow_order = None;
    let mut must_divide = None;
    let mut divisible_by = None;
    let mut lower = None;
    let mut proper = false;
    let mut claimed = None;
    for l in &block.lines {
        match l.keyword() {
            "GROUP" => {
                l.arity(1)?;
                let id = l.arg(0)?;
                order = Some(lookup(id).ok_or_else(|| l.error(format!("unknown group {id}")))?);
            }
            "GROUPORDER" => {
                l.arity(1)?;
                order = Some(parse_big(l.line, l.arg(0)?)?);
            }
            "PRIME" => {
                l.arity(1)?;
                p = Some(parse_u64(l, l.arg(0)?)?);
            }
            "SYLOWORDER" => sylow_order = Some(parse_big(l.line, l.arg(0)?)?),
            "MUSTDIVIDE" => must_divide = Some(parse_big(l.line, l.arg(0)?)?),
            "DIVISIBLEBY" => divisible_by = Some(parse_big(l.line, l.arg(0)?)?),
            "LOWERBOUND" => lower = Some(parse_big(l.line, l.arg(0)?)?),
            "PROPER" => proper = true,
            "CLAIMEDPRE" => claimed = Some(crate::tables::parse_usize(l.line, l.arg(0)?)?),
            other => return Err(l.error(format!("unexpected {other} in SYLOW"))),
        }
    }
    let order =
        order.ok_or_else(|| CtbError::syntax(block.line, "SYLOW without GROUP or GROUPORDER"))?;
    let p = p.ok_or_else(|| CtbError::syntax(block.line, "SYLOW without PRIME"))?;
    let mut problem = SylowProblem::new(&name, order, p);
    if let Some(s) = sylow_order {
        problem.sylow_order = s;
    }
    problem.must_divide = must_divide;
    problem.must_be_divisible_by = divisible_by;
    problem.strict_lower_bound = lower;
    problem.proper = proper;
    problem.claimed_pre_congruence = claimed;
    problem
        .validate()
        .map_err(|e| CtbError::syntax(block.line, e.to_string()))?;
    Ok(problem)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionProblemSpec {
    pub sub: String,
    pub big: String,
    /// Unknown everywhere when absent.
    pub seed: Option<PartialClassMap>,
}

pub fn parse_fusion_problem(block: &RawBlock) -> Result<FusionProblemSpec, CtbError> {
    let mut ids = block_name(block, "FUSIONPROBLEM", 2)?;
    let big = ids.pop().expect("two ids");
    let sub = ids.pop().expect("two ids");
    let mut seed = None;
    for l in &block.lines {
        match l.keyword() {
            "SEED" => seed = Some(parse_entries(l.line, l.args())?),
            other => return Err(l.error(format!("unexpected {other} in FUSIONPROBLEM"))),
        }
    }
    Ok(FusionProblemSpec { sub, big, seed })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerProblemSpec {
    pub table: String,
    pub blanks: Vec<(u64, Vec<String>)>,
    pub fields: Vec<(i64, Vec<String>)>,
}

impl PowerProblemSpec {
    fn indices(head: &TableHead, names: &[String]) -> Result<Vec<usize>, String> {
        names
            .iter()
            .map(|n| {
                head.class_index(n)
                    .ok_or_else(|| format!("{}: no class {n}", head.id))
            })
            .collect()
    }

    pub fn blank_indices(&self, head: &TableHead) -> Result<Vec<(u64, Vec<usize>)>, String> {
        self.blanks
            .iter()
            .map(|(p, ns)| Ok((*p, Self::indices(head, ns)?)))
            .collect()
    }

    pub fn quadratic_fields(&self, head: &TableHead) -> Result<Vec<QuadraticField>, String> {
        self.fields
            .iter()
            .map(|(d, ns)| {
                Ok(QuadraticField {
                    d: *d,
                    classes: Self::indices(head, ns)?,
                })
            })
            .collect()
    }
}

pub fn parse_power_problem(block: &RawBlock) -> Result<PowerProblemSpec, CtbError> {
    let table = block_name(block, "POWERPROBLEM", 1)?.remove(0);
    let mut spec = PowerProblemSpec {
        table,
        blanks: Vec::new(),
        fields: Vec::new(),
    };
    for l in &block.lines {
        match l.keyword() {
            "BLANK" => spec
                .blanks
                .push((parse_u64(l, l.arg(0)?)?, l.args()[1..].to_vec())),
            "QUADRATIC" => {
                let d: i64 = l
                    .arg(0)?
                    .parse()
                    .map_err(|_| l.error("QUADRATIC expects an integer discriminant"))?;
                spec.fields.push((d, l.args()[1..].to_vec()));
            }
            other => return Err(l.error(format!("unexpected {other} in POWERPROBLEM"))),
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::parse_document;

    #[test]
    fn decomp_round_trip_through_solver() {
        let doc = parse_document(
            "DECOMP tiny\nCLASSES 2a\nTARGET 3\nCANDIDATE 1a 1 1\nCANDIDATE 2a 2 -1\n\
             FIXED 2a 0\nEXPECT {1,1}\nEND\n",
        )
        .unwrap();
        let spec = parse_decomp(&doc.blocks[0]).unwrap();
        assert_eq!(spec.expect, Some(vec![vec![1, 1]]));
        assert_eq!(
            super::super::solve_decomposition(&spec.problem).unwrap(),
            vec![vec![1, 1]]
        );
    }

    #[test]
    fn sylow_stanza_with_group_lookup() {
        let doc = parse_document("SYLOW a5\nGROUP A5\nPRIME 5\nPROPER\nEND\n").unwrap();
        let p = parse_sylow(&doc.blocks[0], |id| (id == "A5").then(|| BigInt::from(60))).unwrap();
        assert!(p.proper);
        assert_eq!(p.sylow_order, BigInt::from(5));
    }

    #[test]
    fn unknown_class_in_constraint_is_an_error() {
        let doc =
            parse_document("DECOMP t\nCLASSES 2a\nTARGET 1\nCANDIDATE 1a 1 1\nFIXED 2b 1\nEND\n")
                .unwrap();
        let err = parse_decomp(&doc.blocks[0]).unwrap_err();
        assert_eq!(err.line(), 5);
    }
}
