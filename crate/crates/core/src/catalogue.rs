//! Group records and the line-oriented catalogue format.
//!
//! ```text
//! group <name>
//! degree <n>
//! gen <cycle-notation>        # one line per generator
//! order <integer>             # optional
//! primitive <true|false>      # optional
//! expect_k <k1,k2,...>        # optional; `none` for an empty list
//! blocks <set;set;...>        # optional, one block system per line
//! delta_orbit <length>        # optional, |{1,2,3}^G|
//! sigma <s1,s2,...>           # optional, orbit counts for k = 1, 2, ...
//! skip_scan                   # optional
//! note <free text>            # optional, repeatable
//! end
//! ```
//!
//! Blank lines and `#` comments are ignored. Names are unique keys.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::action::{
    induced_on_bisections, is_primitive, subset_orbit, subset_orbits, verify_blocks, ActionError,
    BlockPartition,
};
use crate::bsgs::{GeneratedGroup, StabilizerChain};
use crate::perm::{parse_subset, KSubset, Permutation};
use crate::projline::{psl_pgl_groups, FiniteField};
use crate::swcheck::{default_k_range, sw_scan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogueError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> CatalogueError {
    CatalogueError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// One catalogue entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRecord {
    pub name: String,
    pub degree: usize,
    pub generator_text: Vec<String>,
    pub generators: Vec<Permutation>,
    pub expected_order: Option<u128>,
    pub expected_primitive: Option<bool>,
    pub expected_k: Option<Vec<usize>>,
    pub blocks: Vec<Vec<Vec<usize>>>,
    /// Expected `|{1,2,3}^G|`.
    pub delta_orbit: Option<u64>,
    /// Expected `σ_1, σ_2, …`.
    pub sigma: Vec<usize>,
    pub source_note: String,
    pub skip_scan: bool,
}

impl GroupRecord {
    fn empty(name: String) -> Self {
        GroupRecord {
            name,
            degree: 0,
            generator_text: Vec::new(),
            generators: Vec::new(),
            expected_order: None,
            expected_primitive: None,
            expected_k: None,
            blocks: Vec::new(),
            delta_orbit: None,
            sigma: Vec::new(),
            source_note: String::new(),
            skip_scan: false,
        }
    }

    /// A record carrying only the group's name, degree and generators.
    pub fn from_group(name: &str, group: &GeneratedGroup) -> Self {
        let mut r = GroupRecord::empty(name.to_string());
        r.degree = group.degree();
        r.generators = group.generators().to_vec();
        r.generator_text = r.generators.iter().map(|g| g.to_string()).collect();
        r
    }

    /// The generated group, named after the record.
    pub fn group(&self) -> GeneratedGroup {
        if self.generators.is_empty() {
            return GeneratedGroup::trivial(self.degree).named(&self.name);
        }
        GeneratedGroup::new(self.generators.clone())
            .expect("generators parsed at the record degree")
            .named(&self.name)
    }
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Option<Vec<T>> {
    if text.trim() == "none" {
        return Some(Vec::new());
    }
    text.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Parses catalogue text into records, in file order.
pub fn parse_catalogue(text: &str) -> Result<Vec<GroupRecord>, CatalogueError> {
    let mut records: Vec<GroupRecord> = Vec::new();
    let mut names = HashSet::new();
    let mut current: Option<(GroupRecord, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let indent = line.len() - line.trim_start().len();
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        let value_col = if rest.is_empty() {
            indent + 1
        } else {
            rest.as_ptr() as usize - raw.as_ptr() as usize + 1
        };
        if key == "group" {
            if let Some((open, start)) = &current {
                return Err(parse_err(
                    line_no,
                    indent + 1,
                    format!(
                        "group {:?} opened at line {start} is missing 'end'",
                        open.name
                    ),
                ));
            }
            if rest.is_empty() {
                return Err(parse_err(line_no, value_col, "missing group name"));
            }
            if !names.insert(rest.to_string()) {
                return Err(parse_err(
                    line_no,
                    value_col,
                    format!("duplicate group name {rest:?}"),
                ));
            }
            current = Some((GroupRecord::empty(rest.to_string()), line_no));
            continue;
        }
        let Some((rec, _)) = current.as_mut() else {
            return Err(parse_err(
                line_no,
                indent + 1,
                format!("'{key}' outside a group block"),
            ));
        };
        let bad = |what: &str| parse_err(line_no, value_col, format!("invalid {what}: {rest:?}"));
        match key {
            "degree" => {
                if rec.degree != 0 {
                    return Err(parse_err(line_no, indent + 1, "degree given twice"));
                }
                rec.degree = rest
                    .parse()
                    .ok()
                    .filter(|&n: &usize| n >= 1)
                    .ok_or_else(|| bad("degree"))?;
            }
            "gen" => {
                if rec.degree == 0 {
                    return Err(parse_err(line_no, indent + 1, "generator before degree"));
                }
                let g = Permutation::parse_cycles(rest, rec.degree).map_err(|e| {
                    parse_err(
                        line_no,
                        value_col,
                        format!("generator of {}: {e}", rec.name),
                    )
                })?;
                rec.generator_text.push(rest.to_string());
                rec.generators.push(g);
            }
            "order" => rec.expected_order = Some(rest.parse().map_err(|_| bad("order"))?),
            "primitive" => {
                rec.expected_primitive = Some(rest.parse().map_err(|_| bad("primitive flag"))?)
            }
            "expect_k" => rec.expected_k = Some(parse_list(rest).ok_or_else(|| bad("k list"))?),
            "delta_orbit" => rec.delta_orbit = Some(rest.parse().map_err(|_| bad("orbit length"))?),
            "sigma" => rec.sigma = parse_list(rest).ok_or_else(|| bad("sigma list"))?,
            "skip_scan" => rec.skip_scan = rest.is_empty() || rest == "true",
            "note" => {
                if !rec.source_note.is_empty() {
                    rec.source_note.push(' ');
                }
                rec.source_note.push_str(rest);
            }
            "blocks" => {
                if rec.degree == 0 {
                    return Err(parse_err(line_no, indent + 1, "blocks before degree"));
                }
                let mut system = Vec::new();
                for part in rest.split(';') {
                    let s = parse_subset(part, rec.degree).map_err(|e| {
                        parse_err(line_no, value_col, format!("block {part:?}: {e}"))
                    })?;
                    system.push(s.members().collect::<Vec<_>>());
                }
                BlockPartition::new(rec.degree, system.clone())
                    .map_err(|e| parse_err(line_no, value_col, e.to_string()))?;
                rec.blocks.push(system);
            }
            "end" => {
                let (rec, start) = current.take().expect("inside a block");
                if rec.degree == 0 {
                    return Err(parse_err(
                        start,
                        1,
                        format!("group {:?} has no degree", rec.name),
                    ));
                }
                records.push(rec);
            }
            other => {
                return Err(parse_err(
                    line_no,
                    indent + 1,
                    format!("unknown key {other:?}"),
                ))
            }
        }
    }
    if let Some((rec, start)) = current {
        return Err(parse_err(
            start,
            1,
            format!("group {:?} is missing 'end'", rec.name),
        ));
    }
    Ok(records)
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Writes records back in catalogue format; `parse_catalogue` reads it back
/// to equal records.
pub fn render_catalogue(records: &[GroupRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(out, "group {}", r.name);
        let _ = writeln!(out, "degree {}", r.degree);
        for g in &r.generator_text {
            let _ = writeln!(out, "gen {g}");
        }
        if let Some(o) = r.expected_order {
            let _ = writeln!(out, "order {o}");
        }
        if let Some(p) = r.expected_primitive {
            let _ = writeln!(out, "primitive {p}");
        }
        if let Some(ks) = &r.expected_k {
            let _ = writeln!(
                out,
                "expect_k {}",
                if ks.is_empty() {
                    "none".to_string()
                } else {
                    join(ks, ",")
                }
            );
        }
        for system in &r.blocks {
            let sets: Vec<String> = system
                .iter()
                .map(|b| format!("{{{}}}", join(b, ",")))
                .collect();
            let _ = writeln!(out, "blocks {}", sets.join(";"));
        }
        if let Some(d) = r.delta_orbit {
            let _ = writeln!(out, "delta_orbit {d}");
        }
        if !r.sigma.is_empty() {
            let _ = writeln!(out, "sigma {}", join(&r.sigma, ","));
        }
        if r.skip_scan {
            let _ = writeln!(out, "skip_scan");
        }
        if !r.source_note.is_empty() {
            let _ = writeln!(out, "note {}", r.source_note);
        }
        let _ = writeln!(out, "end\n");
    }
    out
}

const BUILTIN_TEXT: &str = include_str!("../data/builtin.cat");

/// The sixteen primitive groups of degree at most 24 that have a witness,
/// by degree. Builtin records come in this order first, then the remaining
/// file records in file order.
pub const PRIMITIVE_WITNESS_NAMES: [&str; 16] = [
    "L2(5)",
    "L2(7)",
    "PGL(2,7)",
    "L2(9)",
    "Sym(6)",
    "L2(11)",
    "PGL(2,11)",
    "L2(13)",
    "Alt(7)",
    "ASL(2,4)",
    "2^4:Alt(7)",
    "L2(16)",
    "L3(4)",
    "M22",
    "M23",
    "M24",
];

/// Negative controls: primitive groups expected to have no witness.
pub const NEGATIVE_CONTROLS: [&str; 4] = ["Alt(5)", "Sym(7)", "M11", "M12"];

/// Records generated from the projective-line construction and the
/// bisection action rather than typed in.
fn generated_records() -> Vec<GroupRecord> {
    let witness_k = |name: &str| -> usize {
        match name {
            "L2(5)" => 2,
            "L2(7)" | "PGL(2,7)" => 3,
            "L2(9)" | "Sym(6)" => 4,
            "L2(11)" | "PGL(2,11)" => 5,
            "L2(13)" => 6,
            "L2(16)" => 5,
            _ => unreachable!("not a generated record"),
        }
    };
    let mut out = Vec::new();
    for (q, with_pgl) in [
        (5u32, false),
        (7, true),
        (9, false),
        (11, true),
        (13, false),
        (16, false),
    ] {
        let field = FiniteField::of_order(q).expect("prime power");
        let (psl, pgl) = psl_pgl_groups(&field).expect("q >= 4");
        let mut groups = vec![psl];
        if with_pgl {
            groups.push(pgl);
        }
        for g in groups {
            let name = g.name().expect("named").to_string();
            let mut r = GroupRecord::from_group(&name, &g);
            let (pgl_order, psl_order) = crate::projline::pgl_psl_orders(q);
            r.expected_order = Some(if name.starts_with("PGL") {
                pgl_order
            } else {
                psl_order
            });
            r.expected_primitive = Some(true);
            r.expected_k = Some(vec![witness_k(&name)]);
            r.source_note = format!(
                "Moebius action on the {} points of the projective line over GF({q})",
                q + 1
            );
            out.push(r);
        }
    }
    let sym6 =
        induced_on_bisections(&GeneratedGroup::symmetric(6)).expect("six points split evenly");
    let mut r = GroupRecord::from_group("Sym(6)", &sym6);
    r.expected_order = Some(720);
    r.expected_primitive = Some(true);
    r.expected_k = Some(vec![witness_k("Sym(6)")]);
    r.source_note =
        "Sym(6) acting on the ten splittings of six points into two triples".to_string();
    out.push(r);
    out
}

/// The shipped catalogue: the primitive witness groups, the three imprimitive
/// examples and the controls.
pub fn builtin_catalogue() -> Vec<GroupRecord> {
    let mut file = parse_catalogue(BUILTIN_TEXT).expect("builtin catalogue parses");
    let mut all = generated_records();
    all.append(&mut file);
    let position = |r: &GroupRecord| {
        PRIMITIVE_WITNESS_NAMES
            .iter()
            .position(|&n| n == r.name)
            .unwrap_or(PRIMITIVE_WITNESS_NAMES.len())
    };
    // stable sort keeps file order for the rest
    all.sort_by_key(position);
    all
}

pub fn find_record<'a>(
    records: &'a [GroupRecord],
    name: &str,
) -> Result<&'a GroupRecord, CatalogueError> {
    records
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| CatalogueError::UnknownGroup(name.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    /// Order, primitivity, block systems and orbit fixtures.
    Structure,
    /// Everything in `Structure` plus a witness scan over the default k range.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    fn push(
        &mut self,
        label: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let ok = expected == actual;
        self.checks.push(Check {
            label: label.into(),
            expected,
            actual,
            ok,
        });
    }

    fn note(&mut self, label: impl Into<String>, actual: impl fmt::Display) {
        self.checks.push(Check {
            label: label.into(),
            expected: String::new(),
            actual: actual.to_string(),
            ok: true,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.ok { "ok" } else { "FAIL" };
            if c.expected.is_empty() {
                writeln!(
                    f,
                    "validate {} {} {} {}",
                    self.name, c.label, c.actual, verdict
                )?;
            } else {
                writeln!(
                    f,
                    "validate {} {} expected={} actual={} {}",
                    self.name, c.label, c.expected, c.actual, verdict
                )?;
            }
        }
        Ok(())
    }
}

/// Checks a record's stated metadata against computation. Failures become
/// report entries.
pub fn validate_record(record: &GroupRecord, level: Verification) -> ValidationReport {
    let mut report = ValidationReport {
        name: record.name.clone(),
        checks: Vec::new(),
    };
    let group = record.group();
    let chain = StabilizerChain::build(&group);
    let order = chain.order();
    match record.expected_order {
        Some(expected) => report.push("order", expected, order),
        None => report.note("order", order),
    }
    let transitive = group.is_transitive();
    let primitive = match is_primitive(&group, &chain) {
        Ok(p) => p,
        Err(ActionError::NotTransitive) => false,
        Err(e) => unreachable!("primitivity check failed: {e}"),
    };
    report.note("transitive", transitive);
    match record.expected_primitive {
        Some(expected) => report.push("primitive", expected, primitive),
        None => report.note("primitive", primitive),
    }
    for (i, system) in record.blocks.iter().enumerate() {
        let verdict = BlockPartition::new(record.degree, system.clone())
            .and_then(|p| verify_blocks(&group, &p))
            .unwrap_or(false);
        report.push(format!("blocks[{}]", i + 1), true, verdict);
    }
    if let Some(expected) = record.delta_orbit {
        let actual = KSubset::new(record.degree, [1, 2, 3])
            .ok()
            .and_then(|d| subset_orbit(&group, &chain, &d).ok())
            .map_or(0, |o| o.length());
        report.push("delta_orbit", expected, actual);
    }
    if !record.sigma.is_empty() {
        let actual: Vec<usize> = (1..=record.sigma.len())
            .map(|k| subset_orbits(&group, &chain, k).map_or(0, |p| p.sigma()))
            .collect();
        report.push("sigma", join(&record.sigma, ","), join(&actual, ","));
    }
    if level == Verification::Full && !record.skip_scan {
        let ks: Vec<usize> = sw_scan(&group, &chain, default_k_range(record.degree))
            .expect("default range is valid")
            .iter()
            .map(|w| w.k)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let shown = |v: &[usize]| {
            if v.is_empty() {
                "none".to_string()
            } else {
                join(v, ",")
            }
        };
        match &record.expected_k {
            Some(expected) => report.push("witness_k", shown(expected), shown(&ks)),
            None => report.note("witness_k", shown(&ks)),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# a comment
group C4
degree 4
gen (1,2,3,4)   # trailing comment
order 4
primitive false
expect_k none
blocks {1,3};{2,4}
note cyclic
note of order four
end

group trivial3
degree 3
end
";

    #[test]
    fn parses_sample() {
        let recs = parse_catalogue(SAMPLE).unwrap();
        assert_eq!(recs.len(), 2);
        let c4 = &recs[0];
        assert_eq!(c4.name, "C4");
        assert_eq!(c4.generators[0].to_string(), "(1,2,3,4)");
        assert_eq!(c4.expected_order, Some(4));
        assert_eq!(c4.expected_primitive, Some(false));
        assert_eq!(c4.expected_k, Some(vec![]));
        assert_eq!(c4.blocks, vec![vec![vec![1, 3], vec![2, 4]]]);
        assert_eq!(c4.source_note, "cyclic of order four");
        assert!(recs[1].generators.is_empty());
        assert!(validate_record(c4, Verification::Full).passed());
    }

    #[test]
    fn render_round_trips() {
        let recs = parse_catalogue(SAMPLE).unwrap();
        assert_eq!(parse_catalogue(&render_catalogue(&recs)).unwrap(), recs);
    }

    #[test]
    fn empty_input() {
        assert!(parse_catalogue("").unwrap().is_empty());
        assert!(parse_catalogue("\n# only comments\n").unwrap().is_empty());
    }

    #[test]
    fn out_of_range_generator_names_point() {
        let err = parse_catalogue("group X\ndegree 8\ngen (1,2,9)\nend\n").unwrap_err();
        let CatalogueError::Parse {
            line,
            column,
            message,
        } = err
        else {
            panic!()
        };
        assert_eq!((line, column), (3, 5));
        assert!(message.contains("point 9"), "{message}");
    }

    #[test]
    fn structural_errors() {
        let cases = [
            "degree 3\n",
            "group A\ndegree 3\n",
            "group A\ngen (1,2)\nend\n",
            "group A\ndegree 3\nend\ngroup A\ndegree 3\nend\n",
            "group A\ndegree 3\nfoo 1\nend\n",
            "group A\ndegree x\nend\n",
            "group A\nend\n",
            "group A\ndegree 4\nblocks {1,2};{3}\nend\n",
            "group A\ndegree 3\ngroup B\n",
        ];
        for text in cases {
            assert!(
                matches!(parse_catalogue(text), Err(CatalogueError::Parse { .. })),
                "{text:?}"
            );
        }
    }

    #[test]
    fn identity_record_validates() {
        let recs = parse_catalogue(
            "group t\ndegree 5\ngen ()\norder 1\nprimitive false\nexpect_k none\nend\n",
        )
        .unwrap();
        let report = validate_record(&recs[0], Verification::Full);
        assert!(report.passed(), "{report}");
        assert!(report.to_string().contains("transitive false"));
    }

    #[test]
    fn failing_expectation_is_reported() {
        let recs = parse_catalogue("group s\ndegree 4\ngen (1,2)\ngen (1,2,3,4)\norder 12\nend\n")
            .unwrap();
        let report = validate_record(&recs[0], Verification::Structure);
        assert!(!report.passed());
        assert!(report
            .to_string()
            .contains("order expected=12 actual=24 FAIL"));
    }

    #[test]
    fn builtin_has_table_and_controls() {
        let recs = builtin_catalogue();
        assert!(recs.len() >= 22);
        for (r, name) in recs.iter().zip(PRIMITIVE_WITNESS_NAMES) {
            assert_eq!(r.name, name);
        }
        for name in ["G1", "G2", "G3"].iter().chain(NEGATIVE_CONTROLS.iter()) {
            assert!(find_record(&recs, name).is_ok(), "{name}");
        }
        assert!(find_record(&recs, "nope").is_err());
    }

    #[test]
    fn g3_sixth_generator() {
        let recs = builtin_catalogue();
        let g3 = find_record(&recs, "G3").unwrap();
        assert!(validate_record(g3, Verification::Structure).passed());

        // with (7,8) in place of (2,8) the blocks break and the group blows up
        let text = render_catalogue(std::slice::from_ref(g3))
            .replace("gen (2,8)(9,10)", "gen (7,8)(9,10)");
        let bad = &parse_catalogue(&text).unwrap()[0];
        let report = validate_record(bad, Verification::Structure);
        assert!(!report.passed());
        assert_eq!(StabilizerChain::build(&bad.group()).order(), 812_851_200);
    }
}

#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::bsgs::strategies::group;

    proptest! {
        #[test]
        fn render_parse_round_trip(g in group(10)) {
            let mut rec = GroupRecord::from_group("R", &g);
            rec.expected_order = Some(StabilizerChain::build(&g).order());
            rec.expected_k = Some(vec![]);
            let back = parse_catalogue(&render_catalogue(std::slice::from_ref(&rec))).unwrap();
            prop_assert_eq!(back, vec![rec]);
        }
    }
}
