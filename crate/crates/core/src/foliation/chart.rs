use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::expr::{self, Poly};

/// A foliated chart `(x^a, y^u)` together with a complement `E` of the leaf directions.
///
/// `E` is spanned by `X_a = ∂/∂x^a - t^u_a ∂/∂y^u`; the dual coframe is
/// `dx^a, θ^u = dy^u + t^u_a dx^a`. Coordinates are indexed `0..q` for the transverse
/// block followed by `q..n` for the leaf block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    transverse: Vec<String>,
    leaf: Vec<String>,
    /// `t[a][u]`, a `q × p` matrix.
    t: Vec<Vec<Poly>>,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new(transverse: Vec<String>, leaf: Vec<String>, t: Vec<Vec<Poly>>) -> Result<Self> {
        let q = transverse.len();
        let p = leaf.len();
        if q == 0 {
            return Err(Error::InvalidChart(
                "at least one transverse coordinate is required".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for name in transverse.iter().chain(&leaf) {
            if !valid_ident(name) {
                return Err(Error::InvalidChart(format!("'{name}' is not a valid coordinate name")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidChart(format!("duplicate coordinate name '{name}'")));
            }
        }
        if t.len() != q || t.iter().any(|row| row.len() != p) {
            return Err(Error::InvalidChart(format!("t must be a {q}x{p} matrix")));
        }
        if t.iter().flatten().any(|e| e.nvars() != q + p) {
            return Err(Error::InvalidChart(
                "t entries must be polynomials over the chart".into(),
            ));
        }
        Ok(Chart { transverse, leaf, t })
    }

    /// Chart with `E` spanned by the coordinate fields `∂/∂x^a` (all `t` zero).
    pub fn flat(transverse: &[&str], leaf: &[&str]) -> Result<Self> {
        let n = transverse.len() + leaf.len();
        let t = vec![vec![Poly::zero(n); leaf.len()]; transverse.len()];
        Chart::new(
            transverse.iter().map(|s| s.to_string()).collect(),
            leaf.iter().map(|s| s.to_string()).collect(),
            t,
        )
    }

    /// Builds a chart parsing `t` entries given as `(a, u, expr)` with zero-based
    /// indices `a < q`, `u < p`.
    pub fn with_t(transverse: &[&str], leaf: &[&str], entries: &[(usize, usize, &str)]) -> Result<Self> {
        let mut chart = Chart::flat(transverse, leaf)?;
        for &(a, u, text) in entries {
            if a >= chart.q() || u >= chart.p() {
                return Err(Error::InvalidChart(format!("t index ({a}, {u}) out of range")));
            }
            chart.t[a][u] = chart.parse(text)?;
        }
        Ok(chart)
    }

    pub fn q(&self) -> usize {
        self.transverse.len()
    }

    pub fn p(&self) -> usize {
        self.leaf.len()
    }

    pub fn n(&self) -> usize {
        self.q() + self.p()
    }

    pub fn transverse_names(&self) -> &[String] {
        &self.transverse
    }

    pub fn leaf_names(&self) -> &[String] {
        &self.leaf
    }

    /// All coordinate names, transverse block first.
    pub fn names(&self) -> Vec<String> {
        self.transverse.iter().chain(&self.leaf).cloned().collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.transverse.iter().chain(&self.leaf).position(|n| n == name)
    }

    /// The coefficient `t^u_a` (zero-based `a < q`, `u < p`).
    pub fn t(&self, a: usize, u: usize) -> &Poly {
        &self.t[a][u]
    }

    pub fn t_matrix(&self) -> &[Vec<Poly>] {
        &self.t
    }

    /// True when `E` is spanned by coordinate fields.
    pub fn is_flat(&self) -> bool {
        self.t.iter().flatten().all(Poly::is_zero)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.n())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.n())
    }

    pub fn constant(&self, c: i64) -> Poly {
        Poly::from_int(self.n(), c)
    }

    /// Coordinate function with global index `i` (`i < q` transverse, else leaf).
    pub fn coord(&self, i: usize) -> Poly {
        Poly::var(self.n(), i)
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        Ok(expr::parse(text, &self.names())?)
    }

    pub fn format(&self, f: &Poly) -> String {
        f.display(&self.names()).to_string()
    }

    /// Partial derivative by coordinate name.
    pub fn partial(&self, f: &Poly, coord: &str) -> Result<Poly> {
        let i = self.index_of(coord).ok_or_else(|| {
            Error::Expr(expr::ExprError::UnknownIdentifier {
                name: coord.to_string(),
                position: 0,
            })
        })?;
        Ok(f.partial(i))
    }

    /// A function is foliated when it is constant along the leaves: `∂f/∂y^u = 0` for all `u`.
    pub fn is_foliated(&self, f: &Poly) -> bool {
        (self.q()..self.n()).all(|i| !f.depends_on(i))
    }

    /// `X_a(f) = ∂f/∂x^a - t^u_a ∂f/∂y^u`.
    pub fn frame_derivative(&self, a: usize, f: &Poly) -> Poly {
        let mut out = f.partial(a);
        for u in 0..self.p() {
            if !self.t[a][u].is_zero() {
                out -= &self.t[a][u] * &f.partial(self.q() + u);
            }
        }
        out
    }
}
