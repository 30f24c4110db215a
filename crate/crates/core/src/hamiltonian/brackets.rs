use crate::calculus::{d_prime_fn, differential, lie, lie_prime, vf_bracket};
use crate::error::{Error, Result};
use crate::expr::{rational, Poly};
use crate::foliation::{pairing, BigradedForm, Chart, Summand, VectorField};

use super::HamStructure;

/// Checks that `α` is a foliated (1,0)-form.
pub(crate) fn require_foliated(chart: &Chart, alpha: &BigradedForm, what: &str) -> Result<()> {
    let comps = alpha.transverse_components(chart)?;
    if comps.iter().any(|c| !chart.is_foliated(c)) {
        return Err(Error::NotFoliated(format!("{what} has leaf-dependent coefficients")));
    }
    Ok(())
}

pub(crate) fn require_foliated_fn(chart: &Chart, f: &Poly, what: &str) -> Result<()> {
    if chart.is_foliated(f) {
        Ok(())
    } else {
        Err(Error::NotFoliated(format!(
            "{what} = {} depends on a leaf coordinate",
            chart.format(f)
        )))
    }
}

fn same_chart(a: &HamStructure, b: &HamStructure) -> Result<()> {
    if a.chart() != b.chart() {
        return Err(Error::InvalidStructure("structures live on different charts".into()));
    }
    Ok(())
}

/// `{f, g} = H(df) g` for foliated `f, g`.
pub fn poisson_bracket(hs: &HamStructure, f: &Poly, g: &Poly) -> Result<Poly> {
    let chart = hs.chart();
    require_foliated_fn(chart, f, "f")?;
    require_foliated_fn(chart, g, "g")?;
    let xf = hs.apply(&differential(chart, f))?;
    Ok(xf.apply(chart, g))
}

/// Hamiltonian vector field `X_f = H(df)` of a foliated function.
pub fn hamiltonian_field(hs: &HamStructure, f: &Poly) -> Result<VectorField> {
    require_foliated_fn(hs.chart(), f, "f")?;
    hs.apply(&differential(hs.chart(), f))
}

type Derivative<'a> = &'a dyn Fn(&VectorField, &BigradedForm) -> Result<BigradedForm>;

fn gd_sum(h: &HamStructure, k: &HamStructure, forms: [&BigradedForm; 3], lie_d: Derivative<'_>) -> Result<Poly> {
    let chart = h.chart();
    let mut total = chart.zero();
    for i in 0..3 {
        let (a, b, c) = (forms[i], forms[(i + 1) % 3], forms[(i + 2) % 3]);
        let l_hab = lie_d(&h.apply_lenient(a)?, b)?;
        let l_kab = lie_d(&k.apply_lenient(a)?, b)?;
        total += pairing(c, &k.apply_lenient(&l_hab)?)?;
        total += pairing(c, &h.apply_lenient(&l_kab)?)?;
    }
    Ok(total)
}

/// Gelfand–Dorfman bracket `[H,K](α,β,γ) = Σ_cycl <K L_{Hα}β, γ> + <H L_{Kα}β, γ>` on
/// foliated 1-forms.
pub fn gd_bracket(
    h: &HamStructure,
    k: &HamStructure,
    alpha: &BigradedForm,
    beta: &BigradedForm,
    gamma: &BigradedForm,
) -> Result<Poly> {
    same_chart(h, k)?;
    let chart = h.chart();
    for (f, name) in [(alpha, "alpha"), (beta, "beta"), (gamma, "gamma")] {
        require_foliated(chart, f, name)?;
    }
    gd_sum(h, k, [alpha, beta, gamma], &|x, w| Ok(lie(chart, x, w)))
}

/// The extension of [`gd_bracket`] to arbitrary (1,0)-forms, with `L′` in place of `L`.
pub fn gd_bracket_extended(
    h: &HamStructure,
    k: &HamStructure,
    alpha: &BigradedForm,
    beta: &BigradedForm,
    gamma: &BigradedForm,
) -> Result<Poly> {
    same_chart(h, k)?;
    h.require_transversal()?;
    k.require_transversal()?;
    let chart = h.chart();
    for f in [alpha, beta, gamma] {
        f.transverse_components(chart)?;
    }
    gd_sum(h, k, [alpha, beta, gamma], &|x, w| lie_prime(chart, x, w))
}

pub(crate) fn omega1_unchecked(hs: &HamStructure, alpha: &BigradedForm, beta: &BigradedForm) -> Result<BigradedForm> {
    let chart = hs.chart();
    let ha = hs.apply_lenient(alpha)?;
    let hb = hs.apply_lenient(beta)?;
    let p = pairing(beta, &ha)?;
    Ok(lie(chart, &ha, beta) - lie(chart, &hb, alpha) - differential(chart, &p))
}

/// `{α,β} = L_{Hα}β − L_{Hβ}α − d<Hα,β>` on foliated 1-forms.
pub fn omega1_bracket(hs: &HamStructure, alpha: &BigradedForm, beta: &BigradedForm) -> Result<BigradedForm> {
    require_foliated(hs.chart(), alpha, "alpha")?;
    require_foliated(hs.chart(), beta, "beta")?;
    omega1_unchecked(hs, alpha, beta)
}

/// `{α,β}′ = L′_{Hα}β − L′_{Hβ}α − d′<Hα,β>` on (1,0)-forms; needs `k = 0`.
pub fn omega1_bracket_extended(hs: &HamStructure, alpha: &BigradedForm, beta: &BigradedForm) -> Result<BigradedForm> {
    hs.require_transversal()?;
    let chart = hs.chart();
    let ha = hs.apply(alpha)?;
    let hb = hs.apply(beta)?;
    let p = pairing(beta, &ha)?;
    Ok(lie_prime(chart, &ha, beta)? - lie_prime(chart, &hb, alpha)? - d_prime_fn(chart, &p))
}

/// Components of the map `α ↦ (L_X H)(α)` on the basis forms `dx^a`: row `a` of `h`
/// holds the `X_b` components of `(L_X H)(dx^a)`, row `a` of `k` its `∂/∂y^u` components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieDerivativeOfH {
    pub h: Vec<Vec<Poly>>,
    pub k: Vec<Vec<Poly>>,
}

impl LieDerivativeOfH {
    fn from_images(images: Vec<VectorField>) -> Self {
        LieDerivativeOfH {
            h: images.iter().map(|v| v.xi().to_vec()).collect(),
            k: images.iter().map(|v| v.eta().to_vec()).collect(),
        }
    }

    /// The same map as a [`HamStructure`]; fails when it is not skew.
    pub fn as_structure(&self, chart: &Chart) -> Result<HamStructure> {
        HamStructure::new(chart.clone(), self.h.clone(), self.k.clone())
    }

    pub fn is_skew(&self) -> bool {
        let q = self.h.len();
        (0..q).all(|a| (a..q).all(|b| self.h[a][b] == -&self.h[b][a]))
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().chain(&self.k).flatten().all(Poly::is_zero)
    }
}

/// `L_X H(α) = [X, Hα] − H(L_X α)`.
pub fn lie_derivative_of_h(hs: &HamStructure, x: &VectorField) -> Result<LieDerivativeOfH> {
    let chart = hs.chart();
    let images = (0..hs.q())
        .map(|a| {
            let dxa = BigradedForm::dx(chart, a);
            Ok(vf_bracket(chart, x, &hs.image(a)) - hs.apply_lenient(&lie(chart, x, &dxa))?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LieDerivativeOfH::from_images(images))
}

/// `L′_X H(α) = p_E[X, Hα] − H(L′_X α)` for `X ∈ Γ E` and `k = 0`.
pub fn lie_derivative_of_h_prime(hs: &HamStructure, x: &VectorField) -> Result<LieDerivativeOfH> {
    hs.require_transversal()?;
    let chart = hs.chart();
    if !x.is_in_e() {
        return Err(Error::NotInE);
    }
    let images = (0..hs.q())
        .map(|a| {
            let dxa = BigradedForm::dx(chart, a);
            let br = vf_bracket(chart, x, &hs.image(a)).project(Summand::E);
            Ok(br - hs.apply(&lie_prime(chart, x, &dxa)?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LieDerivativeOfH::from_images(images))
}

/// Residuals `LHS − RHS` of the two fundamental identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResiduals {
    /// `<γ,H{α,β}> − <γ,[Hα,Hβ]> − ½[H,H](α,β,γ)`
    pub first: Poly,
    /// `Σ_cycl <{{α,β},γ},X> − [H,L_X H](α,β,γ) − ½ Σ_cycl [H,H](α,β,d<γ,X>)`
    pub second: Poly,
}

impl IdentityResiduals {
    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }
}

/// Evaluates both fundamental identities on foliated 1-forms and a foliated field `X`.
pub fn identity_checks(
    hs: &HamStructure,
    alpha: &BigradedForm,
    beta: &BigradedForm,
    gamma: &BigradedForm,
    x: &VectorField,
) -> Result<IdentityResiduals> {
    let chart = hs.chart();
    for (f, name) in [(alpha, "alpha"), (beta, "beta"), (gamma, "gamma")] {
        require_foliated(chart, f, name)?;
    }
    if !x.is_foliated(chart) {
        return Err(Error::NotFoliated("X is not a foliated vector field".into()));
    }
    let half = Poly::constant(chart.n(), rational(1, 2));
    let hh = |a: &BigradedForm, b: &BigradedForm, c: &BigradedForm| gd_bracket(hs, hs, a, b, c);

    let ab = omega1_unchecked(hs, alpha, beta)?;
    let lhs1 = pairing(gamma, &hs.apply_lenient(&ab)?)?;
    let br = vf_bracket(chart, &hs.apply_lenient(alpha)?, &hs.apply_lenient(beta)?);
    let first = lhs1 - pairing(gamma, &br)? - &half * &hh(alpha, beta, gamma)?;

    let forms = [alpha, beta, gamma];
    let mut cyc = chart.zero();
    let mut defect = chart.zero();
    for i in 0..3 {
        let (a, b, c) = (forms[i], forms[(i + 1) % 3], forms[(i + 2) % 3]);
        let inner = omega1_unchecked(hs, a, b)?;
        cyc += pairing(&omega1_unchecked(hs, &inner, c)?, x)?;
        let dcx = differential(chart, &pairing(c, x)?);
        defect += hh(a, b, &dcx)?;
    }
    let lxh = lie_derivative_of_h(hs, x)?.as_structure(chart)?;
    let mixed = gd_bracket(hs, &lxh, alpha, beta, gamma)?;
    let second = cyc - mixed - &half * &defect;
    Ok(IdentityResiduals { first, second })
}
