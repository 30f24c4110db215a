use crate::error::{Error, Result};
use crate::expr::Poly;
use crate::foliation::{BigradedForm, Chart, Multivector, VectorField};

/// A skew morphism `h: ν*F → TM` in local form `h(dx^a) = h^{ab} X_b + k^{au} ∂/∂y^u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamStructure {
    chart: Chart,
    h: Vec<Vec<Poly>>,
    k: Vec<Vec<Poly>>,
}

impl HamStructure {
    pub fn new(chart: Chart, h: Vec<Vec<Poly>>, k: Vec<Vec<Poly>>) -> Result<Self> {
        let (q, p, n) = (chart.q(), chart.p(), chart.n());
        if h.len() != q || h.iter().any(|r| r.len() != q) {
            return Err(Error::InvalidStructure(format!("h must be a {q}x{q} matrix")));
        }
        if k.len() != q || k.iter().any(|r| r.len() != p) {
            return Err(Error::InvalidStructure(format!("k must be a {q}x{p} matrix")));
        }
        if h.iter().flatten().chain(k.iter().flatten()).any(|e| e.nvars() != n) {
            return Err(Error::InvalidStructure(
                "entries must be polynomials over the chart".into(),
            ));
        }
        for a in 0..q {
            for b in a..q {
                if h[a][b] != -&h[b][a] {
                    return Err(Error::InvalidStructure(format!(
                        "h is not skew symmetric at ({}, {})",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(HamStructure { chart, h, k })
    }

    /// Builds a structure from the entries `h^{ab}` with `a < b` and `k^{au}` (zero-based
    /// indices, `u < p`), parsing each expression over the chart.
    pub fn from_entries(chart: Chart, h: &[(usize, usize, &str)], k: &[(usize, usize, &str)]) -> Result<Self> {
        let (q, p) = (chart.q(), chart.p());
        let mut hm = vec![vec![chart.zero(); q]; q];
        let mut km = vec![vec![chart.zero(); p]; q];
        for &(a, b, text) in h {
            if a >= b || b >= q {
                return Err(Error::InvalidStructure(format!(
                    "h index ({a}, {b}) must satisfy a < b < q"
                )));
            }
            let e = chart.parse(text)?;
            hm[b][a] = -&e;
            hm[a][b] = e;
        }
        for &(a, u, text) in k {
            if a >= q || u >= p {
                return Err(Error::InvalidStructure(format!("k index ({a}, {u}) out of range")));
            }
            km[a][u] = chart.parse(text)?;
        }
        Self::new(chart, hm, km)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn q(&self) -> usize {
        self.chart.q()
    }

    pub fn h(&self, a: usize, b: usize) -> &Poly {
        &self.h[a][b]
    }

    pub fn k(&self, a: usize, u: usize) -> &Poly {
        &self.k[a][u]
    }

    pub fn h_matrix(&self) -> &[Vec<Poly>] {
        &self.h
    }

    pub fn k_matrix(&self) -> &[Vec<Poly>] {
        &self.k
    }

    /// `k = 0`: the image lies in the chart's complement `E`.
    pub fn is_transversal(&self) -> bool {
        self.k.iter().flatten().all(Poly::is_zero)
    }

    pub(crate) fn require_transversal(&self) -> Result<()> {
        if self.is_transversal() {
            Ok(())
        } else {
            Err(Error::NotTransversal)
        }
    }

    /// `H(dx^a)`.
    pub fn image(&self, a: usize) -> VectorField {
        VectorField::new(self.h[a].clone(), self.k[a].clone())
    }

    /// `H(α)` for a (1,0)-form `α = α_a dx^a`.
    pub fn apply(&self, alpha: &BigradedForm) -> Result<VectorField> {
        let comps = alpha.transverse_components(&self.chart)?;
        Ok(self.apply_components(&comps))
    }

    /// `H` extended by zero on the `θ` directions: only the `dx^a` components of
    /// a 1-form are used.
    pub fn apply_lenient(&self, alpha: &BigradedForm) -> Result<VectorField> {
        let v = alpha.to_vector()?;
        Ok(self.apply_components(&v[..self.q()]))
    }

    pub(crate) fn apply_components(&self, comps: &[Poly]) -> VectorField {
        let mut out = VectorField::zero(&self.chart);
        for (a, c) in comps.iter().enumerate() {
            if !c.is_zero() {
                out = out + self.image(a).scale(c);
            }
        }
        out
    }

    /// `W = Σ_{a<b} h^{ab} X_a∧X_b`.
    pub fn bivector(&self) -> Multivector {
        let mut w = Multivector::zero(self.chart.n());
        for a in 0..self.q() {
            for b in a + 1..self.q() {
                w.add_term(&[a, b], self.h[a][b].clone());
            }
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn images() {
        let c = Chart::flat(&["x1", "x2"], &["y3"]).unwrap();
        let a = HamStructure::from_entries(c.clone(), &[(0, 1, "1")], &[]).unwrap();
        assert_eq!(a.apply(&BigradedForm::dx(&c, 0)).unwrap(), VectorField::frame(&c, 1));
        assert!(a.apply(&BigradedForm::theta(&c, 0)).is_err());
        let b = HamStructure::from_entries(c.clone(), &[], &[(0, 0, "1")]).unwrap();
        assert_eq!(b.apply(&BigradedForm::dx(&c, 0)).unwrap(), VectorField::frame(&c, 2));
        assert!(!b.is_transversal());
    }

    #[test]
    fn rejects_non_skew() {
        let c = Chart::flat(&["x1", "x2"], &[]).unwrap();
        let h = vec![vec![c.zero(), c.one()], vec![c.one(), c.zero()]];
        assert!(HamStructure::new(c.clone(), h, vec![vec![]; 2]).is_err());
        let h = vec![vec![c.one(), c.zero()], vec![c.zero(), c.zero()]];
        assert!(HamStructure::new(c, h, vec![vec![]; 2]).is_err());
    }
}
