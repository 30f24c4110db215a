use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::expr::{Poly, Rational};

use super::Chart;

/// Which summand of `TM = E ⊕ TF` to project onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    E,
    TF,
}

/// Vector field in the adapted frame: `ξ^a X_a + η^u ∂/∂y^u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    xi: Vec<Poly>,
    eta: Vec<Poly>,
}

impl VectorField {
    pub fn new(xi: Vec<Poly>, eta: Vec<Poly>) -> Self {
        let n = xi.len() + eta.len();
        assert!(
            xi.iter().chain(&eta).all(|c| c.nvars() == n),
            "components over a different chart"
        );
        VectorField { xi, eta }
    }

    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            xi: vec![chart.zero(); chart.q()],
            eta: vec![chart.zero(); chart.p()],
        }
    }

    /// Adapted frame field `e_i`: `X_a` for `i < q`, `∂/∂y^u` for `i = q + u`.
    pub fn frame(chart: &Chart, i: usize) -> Self {
        let mut v = Self::zero(chart);
        *v.component_mut(i) = chart.one();
        v
    }

    /// Coordinate field `∂/∂x^a` (`i < q`) or `∂/∂y^u` (`i = q + u`) in the adapted frame.
    pub fn coordinate_field(chart: &Chart, i: usize) -> Self {
        let mut comps = vec![chart.zero(); chart.n()];
        comps[i] = chart.one();
        Self::from_coordinate(chart, &comps)
    }

    /// Builds a field from its components in `∂/∂x^a, ∂/∂y^u`.
    pub fn from_coordinate(chart: &Chart, comps: &[Poly]) -> Self {
        let q = chart.q();
        let xi = comps[..q].to_vec();
        let eta = (0..chart.p())
            .map(|u| {
                let mut c = comps[q + u].clone();
                for (a, x) in xi.iter().enumerate() {
                    if !x.is_zero() && !chart.t(a, u).is_zero() {
                        c += x * chart.t(a, u);
                    }
                }
                c
            })
            .collect();
        VectorField { xi, eta }
    }

    /// Components in `∂/∂x^a, ∂/∂y^u`: `ξ^a` and `η^u - ξ^a t^u_a`.
    pub fn to_coordinate(&self, chart: &Chart) -> Vec<Poly> {
        let mut out = self.xi.clone();
        for u in 0..chart.p() {
            let mut c = self.eta[u].clone();
            for (a, x) in self.xi.iter().enumerate() {
                if !x.is_zero() && !chart.t(a, u).is_zero() {
                    c -= x * chart.t(a, u);
                }
            }
            out.push(c);
        }
        out
    }

    pub fn xi(&self) -> &[Poly] {
        &self.xi
    }

    pub fn eta(&self) -> &[Poly] {
        &self.eta
    }

    pub fn n(&self) -> usize {
        self.xi.len() + self.eta.len()
    }

    /// Component along the adapted frame field `e_i`.
    pub fn component(&self, i: usize) -> &Poly {
        if i < self.xi.len() {
            &self.xi[i]
        } else {
            &self.eta[i - self.xi.len()]
        }
    }

    fn component_mut(&mut self, i: usize) -> &mut Poly {
        let q = self.xi.len();
        if i < q {
            &mut self.xi[i]
        } else {
            &mut self.eta[i - q]
        }
    }

    /// All adapted components, transverse block first.
    pub fn components(&self) -> Vec<Poly> {
        self.xi.iter().chain(&self.eta).cloned().collect()
    }

    pub fn from_components(q: usize, comps: &[Poly]) -> Self {
        Self::new(comps[..q].to_vec(), comps[q..].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().chain(&self.eta).all(Poly::is_zero)
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, chart: &Chart, f: &Poly) -> Poly {
        let mut out = chart.zero();
        for (i, c) in self.to_coordinate(chart).iter().enumerate() {
            if !c.is_zero() {
                out += c * &f.partial(i);
            }
        }
        out
    }

    pub fn project(&self, onto: Summand) -> Self {
        let n = self.n();
        match onto {
            Summand::E => VectorField {
                xi: self.xi.clone(),
                eta: vec![Poly::zero(n); self.eta.len()],
            },
            Summand::TF => VectorField {
                xi: vec![Poly::zero(n); self.xi.len()],
                eta: self.eta.clone(),
            },
        }
    }

    pub fn is_in_e(&self) -> bool {
        self.eta.iter().all(Poly::is_zero)
    }

    pub fn is_in_tf(&self) -> bool {
        self.xi.iter().all(Poly::is_zero)
    }

    /// Projectable: the transverse components do not depend on leaf coordinates.
    pub fn is_foliated(&self, chart: &Chart) -> bool {
        self.xi.iter().all(|c| chart.is_foliated(c))
    }

    pub fn scale(&self, f: &Poly) -> Self {
        VectorField {
            xi: self.xi.iter().map(|c| c * f).collect(),
            eta: self.eta.iter().map(|c| c * f).collect(),
        }
    }

    pub fn eval_at(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.xi
            .iter()
            .chain(&self.eta)
            .map(|c| c.eval(point).map_err(Error::from))
            .collect()
    }

    /// Human-readable form such as `y3*X_2 - d/dy3`.
    pub fn format(&self, chart: &Chart) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.components().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = if i < chart.q() {
                format!("X_{}", i + 1)
            } else {
                format!("d/d{}", chart.leaf_names()[i - chart.q()])
            };
            parts.push(format!("({})*{}", chart.format(c), basis));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            xi: self.xi.iter().zip(&rhs.xi).map(|(a, b)| a + b).collect(),
            eta: self.eta.iter().zip(&rhs.eta).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for VectorField {
    type Output = VectorField;
    fn add(self, rhs: VectorField) -> VectorField {
        &self + &rhs
    }
}

impl Sub<&VectorField> for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            xi: self.xi.iter().zip(&rhs.xi).map(|(a, b)| a - b).collect(),
            eta: self.eta.iter().zip(&rhs.eta).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for VectorField {
    type Output = VectorField;
    fn sub(self, rhs: VectorField) -> VectorField {
        &self - &rhs
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField {
            xi: self.xi.iter().map(|c| -c).collect(),
            eta: self.eta.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        -&self
    }
}
