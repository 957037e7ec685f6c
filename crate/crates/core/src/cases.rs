//! Built-in case studies and their reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::input::{builtin_document, Input};
use crate::ncpoly::{self, AlgebraMatrix, RewriteSystem};
use crate::orders;
use crate::rational::{self, Rat};
use crate::toric::{self, Cone, ConePair};

pub const NAMES: [&str; 2] = ["francia", "clifford"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseStudyReport {
    pub name: String,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl CaseStudyReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), checks: Vec::new(), overall: true }
    }

    fn check(&mut self, id: &str, description: &str, expected: impl Into<String>, actual: impl Into<String>) {
        let (expected, actual) = (expected.into(), actual.into());
        let pass = expected == actual;
        self.overall &= pass;
        self.checks.push(Check { id: id.into(), description: description.into(), expected, actual, pass });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

impl fmt::Display for CaseStudyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case study: {}", self.name)?;
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {}: {}", c.id, c.description)?;
            writeln!(f, "       expected: {}", c.expected)?;
            writeln!(f, "       actual:   {}", c.actual)?;
        }
        writeln!(f, "overall: {}", if self.overall { "PASS" } else { "FAIL" })
    }
}

pub fn run(name: &str) -> Result<CaseStudyReport> {
    let input = builtin_document().build()?;
    match name {
        "francia" => francia(&input),
        "clifford" => clifford(&input),
        other => Err(Error::InvalidArgument(format!("unknown case study {other:?}; expected one of {NAMES:?}"))),
    }
}

fn yes_no(b: bool) -> String {
    b.to_string()
}

fn fmt_points(points: &[Vec<i64>]) -> String {
    let parts: Vec<String> = points.iter().map(|p| rational::fmt_int_vec(p)).collect();
    parts.join(" ")
}

/// Renders a character of the torus as a Laurent monomial in `x, y, z`.
fn laurent(exponents: &[Rat]) -> String {
    let vars = ["x", "y", "z"];
    let mut out = String::new();
    for (v, e) in vars.iter().zip(exponents) {
        if *e == rational::int(0) {
            continue;
        }
        if *e == rational::int(1) {
            out.push_str(v);
        } else {
            out.push_str(&format!("{v}^{e}"));
        }
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

/// Dual-lattice points as sorted Laurent monomials.
fn monomials(cone: &Cone, points: &[Vec<i64>]) -> String {
    let dual = cone.lattice().dual();
    let mut names: Vec<String> = points.iter().map(|p| laurent(&dual.to_ambient(p))).collect();
    names.sort();
    names.join(" ")
}

fn sorted(mut names: Vec<&str>) -> String {
    names.sort();
    names.join(" ")
}

fn francia(input: &Input) -> Result<CaseStudyReport> {
    let mut r = CaseStudyReport::new("francia");
    let base = input.cone_pair(Some("francia-base"))?;
    let pair = input.cone_pair(Some("francia-pair"))?;
    let cone = base.cone();

    let k = toric::ToricDivisor::canonical(cone.rays().len());
    let k_functional = toric::q_cartier_functional(cone, &k)?;
    r.check(
        "k-not-q-cartier",
        "K = -D1-D2-D3-D4 has no representing functional",
        "none",
        k_functional.map_or("none".into(), |u| u.to_string()),
    );

    let order = input.order(Some("francia-order"))?;
    let centre = orders::log_centre(order);
    let from_order = ConePair::from_log_centre(cone.clone(), &centre)?;
    r.check(
        "boundary-from-order",
        "discriminant of the order with index 2 along D1 is the boundary of the pair",
        rational::fmt_vec(&pair.boundary().0),
        rational::fmt_vec(&from_order.boundary().0),
    );

    let verdict = toric::klt_check(pair)?;
    let u = verdict.functional.clone();
    r.check(
        "pair-q-cartier",
        "K + 1/2 D1 is represented by u in dual coordinates",
        "(0,0,1/2)",
        u.as_ref().map_or("none".into(), |u| u.to_string()),
    );
    let index = u.as_ref().map(toric::cartier_index).transpose()?;
    r.check("index", "Cartier index of K + 1/2 D1", "2", index.map_or("none".into(), |i| i.to_string()));
    r.check("klt", "all log discrepancies are positive", "true", yes_no(verdict.klt));

    let cover = toric::log_canonical_cover(pair)?;
    r.check(
        "cover-lattice",
        "cover lattice and degree",
        "Z^3 degree 2",
        format!(
            "{} degree {}",
            if cover.lattice.is_standard() { "Z^3".to_string() } else { format!("{:?}", cover.lattice.basis_vectors()) },
            cover.degree
        ),
    );
    r.check(
        "cover-rays",
        "cover ray generators",
        "(0,0,1) (0,1,1) (1,0,1) (1,1,1)",
        fmt_points(cover.cone.rays()),
    );
    let pairings: Vec<Rat> = cover.cone.rays().iter().map(|v| cover.functional.pair(v)).collect();
    r.check(
        "cover-gorenstein",
        "u is integral on the cover and pairs to 1 with every cover ray",
        "(1,1,1,1)",
        rational::fmt_vec(&pairings),
    );
    r.check("cover-canonical", "cover is canonical", "true", yes_no(toric::canonical_check(&cover.cone)?));

    let base_gens = toric::dual_cone_generators(cone)?;
    r.check(
        "base-generators",
        "dual semigroup generators of the base: a^2, ab, b^2, c, d",
        sorted(vec!["x^-2z^2", "x^-1y^-1z^2", "y^-2z^2", "y", "x"]),
        monomials(cone, &base_gens),
    );
    r.check("base-generator-count", "number of base generators", "5", base_gens.len().to_string());
    let cover_gens = toric::dual_cone_generators(&cover.cone)?;
    r.check(
        "cover-generators",
        "dual semigroup generators of the cover: a, b, c, d",
        sorted(vec!["x^-1z", "y^-1z", "y", "x"]),
        monomials(&cover.cone, &cover_gens),
    );
    r.check("cover-generator-count", "number of cover generators", "4", cover_gens.len().to_string());

    let correspondence = toric::cover_correspondence_check(pair)?;
    r.check(
        "klt-iff-cover-canonical",
        "klt downstairs agrees with canonical on the cover",
        "true",
        yes_no(correspondence.agree()),
    );

    let quotient = ncpoly::commutative_quotient_check()?;
    r.check(
        "quiver-relations",
        "the four quiver relations hold for the 2x2 matrix images over k[a,b,c,d]/(ad-bc) localized at a",
        "true true true true",
        quotient.quiver_relations.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
    );
    r.check(
        "invariant-ring",
        "xz-y^2, xd-yc, yd-zc vanish for x=a^2, y=ab, z=b^2",
        "true true true",
        quotient.invariant_relations.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
    );
    r.check(
        "invariants-fixed",
        "a^2, ab, b^2, c, d are fixed by the sign action",
        "true",
        yes_no(quotient.invariants_fixed),
    );
    Ok(r)
}

fn nf_string(rs: &RewriteSystem, s: &str) -> Result<String> {
    Ok(rs.display(&rs.normal_form(&rs.parse(s)?)?))
}

fn clifford(input: &Input) -> Result<CaseStudyReport> {
    let mut r = CaseStudyReport::new("clifford");
    let rs = input.presentation(Some("clifford"))?;

    let relations: Vec<String> =
        ["ac + ca", "bc + cb", "ab - ba - 2c^3"].iter().map(|s| nf_string(rs, s)).collect::<Result<_>>()?;
    r.check("relations", "ac+ca, bc+cb, ab-ba-2c^3 reduce to zero", "0 0 0", relations.join(" "));

    let gram = [["2x", "z", "0"], ["z", "2y", "0"], ["0", "0", "2t"]];
    let gens = ["a", "b", "c"];
    let mut gram_ok = Vec::new();
    for (i, gi) in gens.iter().enumerate() {
        for (j, gj) in gens.iter().enumerate() {
            let lhs = rs.parse(&format!("{gi}{gj} + {gj}{gi}"))?;
            gram_ok.push(ncpoly::verify_identity(&lhs, &rs.parse(gram[i][j])?, rs)?);
        }
    }
    r.check(
        "clifford-form",
        "gh + hg equals the Gram matrix entry for all generator pairs",
        vec!["true"; 9].join(" "),
        gram_ok.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
    );

    let generators = rs.generators();
    for name in ["x", "y", "z", "t"] {
        r.check(
            &format!("central-{name}"),
            &format!("{name} commutes with a, b, c"),
            "true",
            yes_no(ncpoly::is_central(&rs.parse(name)?, rs, &generators)?),
        );
    }
    r.check("c-not-central", "c is not central", "false", yes_no(ncpoly::is_central(&rs.parse("c")?, rs, &generators)?));

    r.check("commutator-square", "(ab-ba)^2 - 4c^6 reduces to zero", "0", nf_string(rs, "(ab - ba)^2 - 4c^6")?);
    r.check("centre-relation", "z^2 - 4xy - 4t^3 reduces to zero", "0", nf_string(rs, "z^2 - 4xy - 4t^3")?);

    let m = AlgebraMatrix::parse(rs, &[&["-c", "0", "-a"], &["0", "c", "b"], &["-b", "a", "-2c^2"]])?;
    let left = AlgebraMatrix::parse(rs, &[&["b", "a", "c"]])?;
    let right = AlgebraMatrix::parse(rs, &[&["a"], &["b"], &["c"]])?;
    r.check(
        "resolution-left",
        "(b a c) composed with the middle map",
        "[0, 0, 0]",
        ncpoly::matrix_compose(&left, &m, rs)?.display(rs),
    );
    r.check(
        "resolution-right",
        "the middle map composed with (a b c)^T",
        "[0; 0; 0]",
        ncpoly::matrix_compose(&m, &right, rs)?.display(rs),
    );

    let order = input.order(Some("clifford-order"))?;
    r.check(
        "discriminant",
        "discriminant of the declared ramification along B",
        "1/2*B",
        orders::discriminant(order).to_string(),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn francia_passes() {
        let r = run("francia").unwrap();
        assert!(r.overall, "{r}");
        assert_eq!(r.checks.len(), 17);
    }

    #[test]
    fn clifford_passes() {
        let r = run("clifford").unwrap();
        assert!(r.overall, "{r}");
    }

    #[test]
    fn unknown_name() {
        assert!(run("nope").is_err());
    }

    #[test]
    fn overall_is_conjunction() {
        let mut r = CaseStudyReport::new("t");
        r.check("a", "", "1", "1");
        assert!(r.overall);
        r.check("b", "", "1", "2");
        assert!(!r.overall);
        assert!(r.to_string().contains("[FAIL] b"));
    }
}
