use crate::calculus::{d_components, d_prime_fn, exterior_d, schouten, vf_bracket};
use crate::error::{Error, Result};
use crate::expr::Poly;
use crate::foliation::{contract, BigradedForm, Multivector, VectorField};

use super::{classify, omega1_bracket_extended, HamStructure, Residual, Verdict, Witness};

/// `X′_f = H(d′f)`; needs `k = 0`.
pub fn extended_hamiltonian_field(hs: &HamStructure, f: &Poly) -> Result<VectorField> {
    hs.require_transversal()?;
    hs.apply(&d_prime_fn(hs.chart(), f))
}

/// `{f,g}′ = X′_f g`.
pub fn extended_poisson(hs: &HamStructure, f: &Poly, g: &Poly) -> Result<Poly> {
    Ok(extended_hamiltonian_field(hs, f)?.apply(hs.chart(), g))
}

/// The bivector `P = ½ h^{ab} X_a∧X_b` of a tame structure, with its Schouten square
/// checked to vanish.
pub fn induced_poisson_bivector(hs: &HamStructure) -> Result<Multivector> {
    if !classify(hs)?.tame.passed() {
        return Err(Error::NotTame);
    }
    let p = hs.bivector();
    let sq = schouten(hs.chart(), &p, &p);
    if !sq.is_zero() {
        return Err(Error::Internal(format!("[P,P] = {sq:?} for a tame structure")));
    }
    Ok(p)
}

/// `d′²f = d′(d′f)`.
pub fn d_prime_squared(hs: &HamStructure, f: &Poly) -> BigradedForm {
    let chart = hs.chart();
    d_components(chart, &d_prime_fn(chart, f)).d_prime
}

/// A function is distinguished when (a) `d′f` is foliated and (b) `i(H(dx^a)) d′²f = 0`
/// for every `a`, i.e. the characteristic distribution lies in the kernel of `d′²f`.
pub fn is_distinguished(hs: &HamStructure, f: &Poly) -> Result<Verdict> {
    hs.require_transversal()?;
    let chart = hs.chart();
    let q = chart.q();
    for a in 0..q {
        let xa = chart.frame_derivative(a, f);
        for u in 0..chart.p() {
            let d = xa.partial(q + u);
            if !d.is_zero() {
                return Ok(Verdict::Fail(Witness::new(
                    "d'f foliated: d(X_a f)/dy^u = 0",
                    &[a, q + u],
                    Residual::Scalar(d),
                )));
            }
        }
    }
    let dd = d_prime_squared(hs, f);
    for a in 0..q {
        let c = contract(&hs.image(a), &dd);
        let first = c.terms().next().map(|(key, coeff)| (key.clone(), coeff.clone()));
        if let Some((key, coeff)) = first {
            let mut idx = vec![a];
            idx.extend(key);
            return Ok(Verdict::Fail(Witness::new(
                "i(H(dx^a)) d'^2 f = 0",
                &idx,
                Residual::Scalar(coeff),
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// `Δ_h(α,β) = H({α,β}′) − [H(α), H(β)]`.
pub fn delta_defect(hs: &HamStructure, alpha: &BigradedForm, beta: &BigradedForm) -> Result<VectorField> {
    let br = omega1_bracket_extended(hs, alpha, beta)?;
    let lhs = hs.apply(&br)?;
    Ok(lhs - vf_bracket(hs.chart(), &hs.apply(alpha)?, &hs.apply(beta)?))
}

/// Checks `{f,g}′ = Φ(X′_f, X′_g)` on all pairs of test functions.
pub fn verify_fundamental_form(hs: &HamStructure, phi: &BigradedForm, test_functions: &[Poly]) -> Result<Verdict> {
    hs.require_transversal()?;
    let chart = hs.chart();
    if phi.degrees().iter().any(|&d| d != 2) {
        return Err(Error::DegreeMismatch {
            expected: 2,
            got: format!("{:?}", phi.degrees()),
        });
    }
    if !phi.is_foliated(chart) {
        return Err(Error::NotFoliated("fundamental form".into()));
    }
    if !exterior_d(chart, phi).is_zero() {
        return Err(Error::NotClosed(
            "fundamental form has nonzero exterior derivative".into(),
        ));
    }
    for f in test_functions {
        if let Verdict::Fail(w) = is_distinguished(hs, f)? {
            return Err(Error::NotDistinguished(format!(
                "{} ({} fails at {:?}: {})",
                chart.format(f),
                w.condition,
                w.indices,
                w.residual.format(chart)
            )));
        }
    }
    let fields = test_functions
        .iter()
        .map(|f| extended_hamiltonian_field(hs, f))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..test_functions.len() {
        for j in i + 1..test_functions.len() {
            let lhs = fields[i].apply(chart, &test_functions[j]);
            let rhs = phi.evaluate(&[fields[i].clone(), fields[j].clone()]);
            if lhs != rhs {
                return Ok(Verdict::Fail(Witness::new(
                    format!(
                        "{{f,g}}' = Phi(X'_f, X'_g): {} != {}",
                        chart.format(&lhs),
                        chart.format(&rhs)
                    ),
                    &[i, j],
                    Residual::Scalar(lhs - rhs),
                )));
            }
        }
    }
    Ok(Verdict::Pass)
}
