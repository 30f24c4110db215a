//! Foliated charts, the adapted frame `X_a, ∂/∂y^u` and coframe `dx^a, θ^u`, and the
//! graded objects built on them.

mod chart;
mod field;
mod graded;

use std::collections::BTreeMap;

pub use chart::Chart;
pub use field::{Summand, VectorField};
pub use graded::{sort_with_sign, Alternating, BigradedForm, Contravariant, Covariant, Multivector};

use crate::error::{Error, Result};
use crate::expr::{ExprError, Poly, Rational};

/// `p_E` or `p_TF` applied to a vector field.
pub fn project(v: &VectorField, onto: Summand) -> VectorField {
    v.project(onto)
}

/// Interior product `i(X)ω`.
pub fn contract(x: &VectorField, omega: &BigradedForm) -> BigradedForm {
    omega.interior(&x.components())
}

pub fn wedge(omega: &BigradedForm, sigma: &BigradedForm) -> BigradedForm {
    omega.wedge(sigma)
}

/// `<α, X>` for a 1-form `α`.
pub fn pairing(alpha: &BigradedForm, x: &VectorField) -> Result<Poly> {
    let comps = alpha.to_vector()?;
    let mut out = Poly::zero(alpha.n());
    for (a, v) in comps.iter().zip(x.components()) {
        if !a.is_zero() && !v.is_zero() {
            out += a * &v;
        }
    }
    Ok(out)
}

impl BigradedForm {
    /// `dx^a` (`a < q`).
    pub fn dx(chart: &Chart, a: usize) -> Self {
        Self::basis(chart.n(), &[a])
    }

    /// `θ^u` (`u < p`).
    pub fn theta(chart: &Chart, u: usize) -> Self {
        Self::basis(chart.n(), &[chart.q() + u])
    }

    /// The (1,0)-form `Σ c_a dx^a`.
    pub fn transverse_one_form(chart: &Chart, comps: &[Poly]) -> Self {
        let mut out = Self::zero(chart.n());
        for (a, c) in comps.iter().enumerate() {
            out.add_term(&[a], c.clone());
        }
        out
    }

    /// `dx^a` components of a 1-form; errors when a `θ` component is present.
    pub fn transverse_components(&self, chart: &Chart) -> Result<Vec<Poly>> {
        let v = self.to_vector()?;
        if v[chart.q()..].iter().any(|c| !c.is_zero()) {
            return Err(Error::LeafComponent);
        }
        Ok(v[..chart.q()].to_vec())
    }

    /// Re-expresses the form in the coordinate coframe `dx^a, dy^u` (same index layout).
    pub fn to_coordinate(&self, chart: &Chart) -> Self {
        if chart.is_flat() {
            return self.clone();
        }
        // θ^u = dy^u + t^u_a dx^a
        let images: Vec<Self> = (0..chart.n())
            .map(|i| {
                let mut img = Self::basis(chart.n(), &[i]);
                if i >= chart.q() {
                    for a in 0..chart.q() {
                        img.add_term(&[a], chart.t(a, i - chart.q()).clone());
                    }
                }
                img
            })
            .collect();
        self.change_basis(&images)
    }

    /// Inverse of [`BigradedForm::to_coordinate`].
    pub fn from_coordinate(coord: &Self, chart: &Chart) -> Self {
        if chart.is_flat() {
            return coord.clone();
        }
        // dy^u = θ^u - t^u_a dx^a
        let images: Vec<Self> = (0..chart.n())
            .map(|i| {
                let mut img = Self::basis(chart.n(), &[i]);
                if i >= chart.q() {
                    for a in 0..chart.q() {
                        img.add_term(&[a], -chart.t(a, i - chart.q()));
                    }
                }
                img
            })
            .collect();
        coord.change_basis(&images)
    }

    /// A form is foliated when its coefficients are foliated and it has no `θ` factor.
    pub fn is_foliated(&self, chart: &Chart) -> bool {
        self.is_transverse(chart.q()) && self.terms().all(|(_, c)| chart.is_foliated(c))
    }

    /// `ω(X_1, …, X_k) = i(X_k)…i(X_1)ω`, the scalar part of the result.
    pub fn evaluate(&self, fields: &[VectorField]) -> Poly {
        let mut acc = self.clone();
        for x in fields {
            acc = contract(x, &acc);
        }
        acc.part_of_degree(0).scalar_part()
    }
}

impl Multivector {
    pub fn from_field(v: &VectorField) -> Self {
        Self::from_vector(&v.components())
    }

    pub fn to_field(&self, q: usize) -> Result<VectorField> {
        Ok(VectorField::from_components(q, &self.to_vector()?))
    }

    /// Contraction with a 1-form: removes one slot.
    pub fn contract_form(&self, alpha: &BigradedForm) -> Result<Self> {
        Ok(self.interior(&alpha.to_vector()?))
    }

    /// `Q(α_1, …, α_k)` with the same convention as [`BigradedForm::evaluate`].
    pub fn evaluate(&self, forms: &[BigradedForm]) -> Result<Poly> {
        let mut acc = self.clone();
        for a in forms {
            acc = acc.contract_form(a)?;
        }
        Ok(acc.part_of_degree(0).scalar_part())
    }

    /// Re-expresses the multivector in the coordinate frame `∂/∂x^a, ∂/∂y^u`.
    pub fn to_coordinate(&self, chart: &Chart) -> Self {
        if chart.is_flat() {
            return self.clone();
        }
        // X_a = ∂_a - t^u_a ∂_u
        let images: Vec<Self> = (0..chart.n())
            .map(|i| {
                let mut img = Self::basis(chart.n(), &[i]);
                if i < chart.q() {
                    for u in 0..chart.p() {
                        img.add_term(&[chart.q() + u], -chart.t(i, u));
                    }
                }
                img
            })
            .collect();
        self.change_basis(&images)
    }

    pub fn from_coordinate(coord: &Self, chart: &Chart) -> Self {
        if chart.is_flat() {
            return coord.clone();
        }
        // ∂_a = X_a + t^u_a ∂_u
        let images: Vec<Self> = (0..chart.n())
            .map(|i| {
                let mut img = Self::basis(chart.n(), &[i]);
                if i < chart.q() {
                    for u in 0..chart.p() {
                        img.add_term(&[chart.q() + u], chart.t(i, u).clone());
                    }
                }
                img
            })
            .collect();
        coord.change_basis(&images)
    }

    /// Only `X_a` factors.
    pub fn is_in_e(&self, chart: &Chart) -> bool {
        self.is_transverse(chart.q())
    }

    /// Projection onto `Γ∧E`: drops every component with a `∂/∂y^u` factor.
    pub fn project_e(&self, chart: &Chart) -> Self {
        self.transverse_part(chart.q())
    }

    /// Projectable section of `∧E`: only `X_a` factors with foliated coefficients.
    pub fn is_foliated(&self, chart: &Chart) -> bool {
        self.is_in_e(chart) && self.terms().all(|(_, c)| chart.is_foliated(c))
    }
}

/// Exact evaluation at a point of the chart.
pub trait EvaluateAt {
    type Output;
    fn evaluate_at(&self, point: &[Rational]) -> Result<Self::Output>;
}

fn check_len(n: usize, point: &[Rational]) -> Result<()> {
    if point.len() != n {
        return Err(ExprError::PointLength {
            expected: n,
            got: point.len(),
        }
        .into());
    }
    Ok(())
}

impl EvaluateAt for Poly {
    type Output = Rational;
    fn evaluate_at(&self, point: &[Rational]) -> Result<Rational> {
        Ok(self.eval(point)?)
    }
}

impl EvaluateAt for VectorField {
    type Output = Vec<Rational>;
    fn evaluate_at(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        check_len(self.n(), point)?;
        self.eval_at(point)
    }
}

impl<K> EvaluateAt for Alternating<K> {
    type Output = BTreeMap<Vec<usize>, Rational>;
    fn evaluate_at(&self, point: &[Rational]) -> Result<Self::Output> {
        check_len(self.n(), point)?;
        self.eval_at(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{integer, rational};

    fn ex_c() -> Chart {
        Chart::with_t(&["x1", "x2"], &["y3"], &[(0, 0, "x2*y3")]).unwrap()
    }

    #[test]
    fn coordinate_field_splits() {
        let c = ex_c();
        let d1 = VectorField::coordinate_field(&c, 0);
        let tf = project(&d1, Summand::TF);
        assert_eq!(tf, VectorField::frame(&c, 2).scale(&c.parse("x2*y3").unwrap()));
        assert_eq!(project(&d1, Summand::E), VectorField::frame(&c, 0));
        assert_eq!(&project(&d1, Summand::E) + &tf, d1);
    }

    #[test]
    fn contractions() {
        let c = ex_c();
        let x1 = VectorField::frame(&c, 0);
        let dy = VectorField::frame(&c, 2);
        assert_eq!(contract(&x1, &BigradedForm::dx(&c, 0)), BigradedForm::scalar(c.one()));
        assert!(contract(&x1, &BigradedForm::theta(&c, 0)).is_zero());
        let w = BigradedForm::dx(&c, 0).wedge(&BigradedForm::theta(&c, 0));
        assert_eq!(contract(&dy, &w), -BigradedForm::dx(&c, 0));
        assert!(contract(&x1, &BigradedForm::scalar(c.one())).is_zero());
    }

    #[test]
    fn pairing_with_coordinate_field() {
        let c = ex_c();
        let d1 = VectorField::coordinate_field(&c, 0);
        assert_eq!(pairing(&BigradedForm::dx(&c, 0), &d1).unwrap(), c.one());
        assert!(pairing(&BigradedForm::theta(&c, 0), &VectorField::frame(&c, 1))
            .unwrap()
            .is_zero());
        let two = BigradedForm::dx(&c, 0).wedge(&BigradedForm::dx(&c, 1));
        assert!(pairing(&two, &d1).is_err());
    }

    #[test]
    fn coframe_roundtrip() {
        let c = ex_c();
        let th = BigradedForm::theta(&c, 0);
        let coord = th.to_coordinate(&c);
        let mut expected = BigradedForm::basis(3, &[2]);
        expected.add_term(&[0], c.parse("x2*y3").unwrap());
        assert_eq!(coord, expected);
        assert_eq!(BigradedForm::from_coordinate(&coord, &c), th);
        let m = Multivector::basis(3, &[0, 1]);
        assert_eq!(Multivector::from_coordinate(&m.to_coordinate(&c), &c), m);
    }

    #[test]
    fn evaluation() {
        let c = ex_c();
        let f = c.parse("x2*y3").unwrap();
        let pt = vec![integer(0), integer(2), rational(1, 2)];
        assert_eq!(f.evaluate_at(&pt).unwrap(), integer(1));
        assert_eq!(c.zero().evaluate_at(&pt).unwrap(), integer(0));
        assert!(VectorField::zero(&c).evaluate_at(&pt[..2]).is_err());
        let w = BigradedForm::dx(&c, 0).wedge(&BigradedForm::dx(&c, 1));
        let v = w.evaluate(&[VectorField::frame(&c, 0), VectorField::frame(&c, 1)]);
        assert_eq!(v, c.one());
    }
}
