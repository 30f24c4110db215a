//! Spec files, reports and the command implementations behind the `folham` binary.

mod corpus;
mod report;
mod spec;

use std::str::FromStr;

use crate::calculus::{d_prime_fn, differential};
use crate::cohomology::{
    basic_derham_cohomology, basic_lp_cohomology, delta_square_sides, format_multivector, lp_coboundary,
    twisted_cohomology, TruncatedComplex,
};
use crate::expr::Poly;
use crate::foliation::{pairing, BigradedForm, VectorField};
use crate::hamiltonian::{
    classify, d_prime_squared, extended_hamiltonian_field, extended_poisson, gd_bracket, gd_bracket_extended,
    identity_checks, image_checks, induced_poisson_bivector, nijenhuis_criterion, omega1_bracket, poisson_bracket,
    tau_criterion, verify_fundamental_form,
};

pub use corpus::{corpus, find_example, run_corpus, CorpusEntry, CorpusOutcome};
pub use report::{
    BracketReport, ClassificationReport, IdentityFailure, IdentitySummary, ImageCheckRow, Report, SpecSummary,
    VerdictReport,
};
pub use spec::{ChartBlock, Number, Spec, SpecFile, StructureBlock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("cannot read spec: {0}")]
    Io(String),
    #[error("invalid spec: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] crate::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Twisted,
    LpBasic,
    BasicDeRham,
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "twisted" => Ok(Theory::Twisted),
            "lp-basic" => Ok(Theory::LpBasic),
            "basic-derham" => Ok(Theory::BasicDeRham),
            _ => Err(format!(
                "unknown theory '{s}' (expected twisted, lp-basic or basic-derham)"
            )),
        }
    }
}

fn summary(spec: &Spec) -> SpecSummary {
    let chart = spec.chart();
    SpecSummary {
        name: spec.name.clone(),
        q: chart.q(),
        p: chart.p(),
        coordinates: chart.names(),
    }
}

fn base_report(spec: &Spec) -> Report {
    Report {
        spec: summary(spec),
        ..Report::default()
    }
}

/// Classification only.
pub fn run_classify(spec: &Spec) -> Report {
    let mut report = base_report(spec);
    match classify(&spec.structure) {
        Ok(c) => report.classification = Some(ClassificationReport::new(&c, spec.chart())),
        Err(e) => report.errors.push(e.to_string()),
    }
    report
}

/// Classification, pointwise image checks, the identity suite and, when given, the
/// fundamental-form check.
pub fn run_verify(spec: &Spec) -> Report {
    let mut report = run_classify(spec);
    if !report.errors.is_empty() {
        return report;
    }
    let hs = &spec.structure;
    match image_checks(hs, &spec.points_or_origin()) {
        Ok(rows) => report.image_checks = rows.iter().map(ImageCheckRow::from).collect(),
        Err(e) => report.errors.push(e.to_string()),
    }
    match identity_suite(spec) {
        Ok(s) => report.identities = Some(s),
        Err(e) => report.errors.push(e.to_string()),
    }
    if let Some(phi) = &spec.fundamental_form {
        match verify_fundamental_form(hs, phi, &spec.test_functions) {
            Ok(v) => report.fundamental_form = Some(VerdictReport::from_verdict(&v, spec.chart())),
            Err(e) => report.errors.push(format!("fundamental form: {e}")),
        }
    }
    report
}

pub fn run_cohomology(spec: &Spec, theory: Theory, k: usize, max_degree: u32, with_basis: bool) -> Report {
    let mut report = base_report(spec);
    let hs = &spec.structure;
    let result = match theory {
        Theory::Twisted => twisted_cohomology(hs, k, max_degree, with_basis),
        Theory::LpBasic => basic_lp_cohomology(hs, k, max_degree, with_basis),
        Theory::BasicDeRham => basic_derham_cohomology(spec.chart(), k, max_degree, with_basis),
    };
    match result {
        Ok(r) => report.cohomology.push(r),
        Err(e) => report.errors.push(e.to_string()),
    }
    report
}

/// `{f,g}` for foliated `f, g`, or `{f,g}′` with `extended`.
pub fn run_bracket(spec: &Spec, f: &str, g: &str, extended: bool) -> Report {
    let mut report = base_report(spec);
    let chart = spec.chart();
    let value = (|| -> crate::Result<Poly> {
        let (fp, gp) = (chart.parse(f)?, chart.parse(g)?);
        if extended {
            extended_poisson(&spec.structure, &fp, &gp)
        } else {
            poisson_bracket(&spec.structure, &fp, &gp)
        }
    })();
    match value {
        Ok(v) => {
            report.bracket = Some(BracketReport {
                f: f.to_string(),
                g: g.to_string(),
                extended,
                value: chart.format(&v),
            })
        }
        Err(e) => report.errors.push(e.to_string()),
    }
    report
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Identities that must hold for every structure of the given kind, evaluated on the
/// coordinate generators and the spec's test functions.
pub fn identity_suite(spec: &Spec) -> crate::Result<IdentitySummary> {
    let hs = &spec.structure;
    let chart = hs.chart();
    let (q, n) = (chart.q(), chart.n());
    let mut s = IdentitySummary::default();
    let classification = classify(hs)?;
    let fmt = |p: &Poly| chart.format(p);

    let dx: Vec<BigradedForm> = (0..q).map(|a| BigradedForm::dx(chart, a)).collect();
    for a in 0..q {
        for b in a + 1..q {
            let lhs = pairing(&dx[b], &hs.apply(&dx[a])?)?;
            let rhs = pairing(&dx[a], &hs.apply(&dx[b])?)?;
            s.record("skew symmetry", (&lhs + &rhs).is_zero(), || {
                format!("({}, {})", a + 1, b + 1)
            });
        }
    }

    let mut foliated: Vec<Poly> = (0..q).map(|a| chart.coord(a)).collect();
    foliated.extend(spec.test_functions.iter().filter(|f| chart.is_foliated(f)).cloned());
    let m = foliated.len();
    for i in 0..m {
        for j in i + 1..m {
            let (f, g) = (&foliated[i], &foliated[j]);
            let lhs = omega1_bracket(hs, &differential(chart, f), &differential(chart, g))?;
            let rhs = differential(chart, &poisson_bracket(hs, f, g)?);
            s.record("{df,dg} = d{f,g}", lhs == rhs, || {
                format!("f = {}, g = {}", fmt(f), fmt(g))
            });
            for k in j + 1..m {
                let h = &foliated[k];
                let gd = gd_bracket(
                    hs,
                    hs,
                    &differential(chart, f),
                    &differential(chart, g),
                    &differential(chart, h),
                )?;
                let mut cyc = chart.zero();
                for (u, v, w) in [(f, g, h), (g, h, f), (h, f, g)] {
                    cyc += poisson_bracket(hs, &poisson_bracket(hs, u, v)?, w)?;
                }
                let two = chart.constant(2);
                s.record("Jacobi linkage", gd == &two * &cyc, || {
                    format!(
                        "f = {}, g = {}, k = {}: {} vs {}",
                        fmt(f),
                        fmt(g),
                        fmt(h),
                        fmt(&gd),
                        fmt(&(&two * &cyc))
                    )
                });
            }
        }
    }

    let fields: Vec<VectorField> = (0..q).map(|a| VectorField::frame(chart, a)).collect();
    for (a, b, c) in triples(q) {
        for (i, x) in fields.iter().enumerate() {
            let r = identity_checks(hs, &dx[a], &dx[b], &dx[c], x)?;
            s.record(
                "fundamental identities",
                r.first.is_zero() && r.second.is_zero(),
                || {
                    format!(
                        "(dx{}, dx{}, dx{}), X_{}: residuals {} and {}",
                        a + 1,
                        b + 1,
                        c + 1,
                        i + 1,
                        fmt(&r.first),
                        fmt(&r.second)
                    )
                },
            );
        }
    }

    if classification.hamiltonian.passed() {
        s.record("p[W,W] = 0", lp_coboundary(hs, &hs.bivector())?.is_zero(), String::new);
    }

    if classification.tame.passed() {
        s.record(
            "tame structure induces a Poisson bivector",
            induced_poisson_bivector(hs).is_ok(),
            String::new,
        );
    }

    if classification.transversal.passed() {
        s.record(
            "tau criterion = Nijenhuis criterion",
            tau_criterion(hs).passed() == nijenhuis_criterion(hs).passed(),
            String::new,
        );
        let mut all: Vec<Poly> = (0..n).map(|i| chart.coord(i)).collect();
        all.extend(spec.test_functions.iter().cloned());
        let m = all.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let (f, g, h) = (&all[i], &all[j], &all[k]);
                    let mut total = chart.zero();
                    for (u, v, w) in [(f, g, h), (g, h, f), (h, f, g)] {
                        total += extended_poisson(hs, &extended_poisson(hs, u, v)?, w)?;
                        let xv = extended_hamiltonian_field(hs, v)?;
                        let xw = extended_hamiltonian_field(hs, w)?;
                        total += d_prime_squared(hs, u).evaluate(&[xv, xw]);
                    }
                    let (df, dg, dh) = (d_prime_fn(chart, f), d_prime_fn(chart, g), d_prime_fn(chart, h));
                    let hh = gd_bracket_extended(hs, hs, &df, &dg, &dh)?;
                    let twice = &chart.constant(2) * &total;
                    s.record("extended Jacobi linkage", hh == twice, || {
                        format!(
                            "f = {}, g = {}, k = {}: {} vs {}",
                            fmt(f),
                            fmt(g),
                            fmt(h),
                            fmt(&hh),
                            fmt(&twice)
                        )
                    });
                }
            }
        }
        let cx = TruncatedComplex::new(hs.clone(), 1)?;
        for k in 0..q.min(2) {
            for b in cx.basis(k) {
                let (direct, rhs) = delta_square_sides(hs, &b)?;
                s.record("delta squared formula", direct == rhs, || format_multivector(chart, &b));
            }
        }
    }
    Ok(s)
}
