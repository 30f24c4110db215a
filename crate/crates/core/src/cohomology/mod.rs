//! The coboundary on `E`-multivector cochains, its square, and truncated cohomology
//! dimensions by exact linear algebra.
//!
//! Cochain spaces are truncated to polynomial coefficients of total degree `≤ D`. Kernels
//! are taken on the degree-`D` space; the image of the previous coboundary is taken from
//! the degree-`(D+1)` space, so that coboundaries lowering the degree by one (e.g. `d`
//! on linear coefficients) are seen at the bottom of the truncation.

mod matrix;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use matrix::RationalMatrix;

use crate::calculus::{exterior_d, schouten};
use crate::error::{Error, Result};
use crate::expr::{Monomial, Poly, Rational};
use crate::foliation::{Alternating, BigradedForm, Chart, Multivector, VectorField};
use crate::hamiltonian::{classify, delta_defect, omega1_bracket_extended, HamStructure};

/// Strictly increasing `k`-subsets of `0..q`.
pub fn multi_indices(q: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(q: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..q {
            cur.push(i);
            rec(q, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= q {
        rec(q, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Basis `m · e_A` of the degree-`k` elements with transverse multi-index `A` and
/// coefficient monomials `m` in the variables `support` of degree `≤ max_degree`, ordered
/// by multi-index then monomial.
pub fn truncated_basis<K>(n: usize, q: usize, k: usize, support: &[usize], max_degree: u32) -> Vec<Alternating<K>> {
    let monos = Monomial::up_to_degree_in(n, support, max_degree);
    let mut out = Vec::new();
    for idx in multi_indices(q, k) {
        for m in &monos {
            out.push(Alternating::term(
                &idx,
                Poly::monomial(m.clone(), Rational::from_integer(1.into())),
            ));
        }
    }
    out
}

/// Finite cochain truncation `C^k_D` of `Γ∧^k E` with polynomial coefficients.
#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    hs: HamStructure,
    max_degree: u32,
}

impl TruncatedComplex {
    pub fn new(hs: HamStructure, max_degree: u32) -> Result<Self> {
        hs.require_transversal()?;
        Ok(TruncatedComplex { hs, max_degree })
    }

    pub fn structure(&self) -> &HamStructure {
        &self.hs
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn basis(&self, k: usize) -> Vec<Multivector> {
        self.basis_of_degree(k, self.max_degree)
    }

    fn basis_of_degree(&self, k: usize, d: u32) -> Vec<Multivector> {
        let chart = self.hs.chart();
        let all: Vec<usize> = (0..chart.n()).collect();
        truncated_basis(chart.n(), chart.q(), k, &all, d)
    }

    /// `dim C^k_D = C(q,k) · C(n+D, n)`.
    pub fn dimension(&self, k: usize) -> usize {
        let chart = self.hs.chart();
        binomial(chart.q(), k) * binomial(chart.n() + self.max_degree as usize, chart.n())
    }

    /// Safe bound on the coefficient degree of `δ` applied to `C^k_D`.
    pub fn target_degree(&self) -> u32 {
        let chart = self.hs.chart();
        let deg = |p: &Poly| p.degree().unwrap_or(0);
        let dh = self.hs.h_matrix().iter().flatten().map(deg).max().unwrap_or(0);
        let dt = chart.t_matrix().iter().flatten().map(|t| deg(t) + 1).max().unwrap_or(0);
        self.max_degree + dh.max(dt)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Ambient coordinates `(multi-index, monomial)` shared by a family of elements.
struct Coordinates {
    index: BTreeMap<(Vec<usize>, Monomial), usize>,
}

impl Coordinates {
    fn new<'a, K: 'a>(elements: impl IntoIterator<Item = &'a Alternating<K>>) -> Self {
        let mut index = BTreeMap::new();
        for e in elements {
            for (key, c) in e.terms() {
                for (m, _) in c.terms() {
                    let len = index.len();
                    index.entry((key.clone(), m.clone())).or_insert(len);
                }
            }
        }
        Coordinates { index }
    }

    fn vector<K>(&self, e: &Alternating<K>) -> Vec<Rational> {
        let mut v = vec![Rational::from_integer(0.into()); self.index.len()];
        for (key, c) in e.terms() {
            for (m, r) in c.terms() {
                v[self.index[&(key.clone(), m.clone())]] = r.clone();
            }
        }
        v
    }

    /// Matrix whose columns are the coordinate vectors of `elements`.
    fn matrix<K>(&self, elements: &[Alternating<K>]) -> RationalMatrix {
        let cols: Vec<Vec<Rational>> = elements.iter().map(|e| self.vector(e)).collect();
        RationalMatrix::from_columns(&cols, self.index.len())
    }
}

/// Dimensions of a truncated cohomology space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub theory: String,
    pub k: usize,
    pub max_degree: u32,
    pub dim_cochains: usize,
    pub dim_kernel: usize,
    pub dim_image_in_kernel: usize,
    pub dim_twisted: usize,
    /// Kernel basis, printed, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_basis: Option<Vec<String>>,
}

/// Computes `dim ker δ_k`, `dim(im δ_{k−1} ∩ ker δ_k)` and their difference, where
/// `source` spans the degree-`k` cochains, `previous` spans the degree-`(k−1)` cochains
/// feeding the image, and `delta` is the coboundary.
fn quotient<K>(
    theory: &str,
    k: usize,
    max_degree: u32,
    source: &[Alternating<K>],
    previous: &[Alternating<K>],
    delta: impl Fn(&Alternating<K>) -> Result<Alternating<K>>,
    print: Option<&dyn Fn(&Alternating<K>) -> String>,
) -> Result<CohomologyResult> {
    let images = source.iter().map(&delta).collect::<Result<Vec<_>>>()?;
    let coords = Coordinates::new(&images);
    let dmat = coords.matrix(&images);
    let null = dmat.kernel_basis();
    let dim_kernel = null.len();
    let kernel: Vec<Alternating<K>> = null
        .iter()
        .map(|v| {
            let mut e = Alternating::zero(source.first().map_or(0, |s| s.n()));
            for (c, b) in v.iter().zip(source) {
                if !num_traits::Zero::is_zero(c) {
                    e = e + b.map_coefficients(|p| p.scale(c));
                }
            }
            e
        })
        .collect();
    let prev_images = previous.iter().map(&delta).collect::<Result<Vec<_>>>()?;
    let dim_image_in_kernel = if prev_images.iter().all(Alternating::is_zero) || kernel.is_empty() {
        0
    } else {
        let amb = Coordinates::new(prev_images.iter().chain(&kernel));
        let u = amb.matrix(&prev_images);
        let v = amb.matrix(&kernel);
        u.rank() + v.rank() - u.hstack(&v).rank()
    };
    Ok(CohomologyResult {
        theory: theory.to_string(),
        k,
        max_degree,
        dim_cochains: source.len(),
        dim_kernel,
        dim_image_in_kernel,
        dim_twisted: dim_kernel - dim_image_in_kernel,
        kernel_basis: print.map(|p| kernel.iter().map(p).collect()),
    })
}

/// Brackets `{dx^a, dx^b}′` and images `H(dx^a)` reused by the coboundary.
struct BasisData {
    dx: Vec<BigradedForm>,
    images: Vec<VectorField>,
    brackets: BTreeMap<(usize, usize), BigradedForm>,
}

impl BasisData {
    fn new(hs: &HamStructure) -> Result<Self> {
        let chart = hs.chart();
        let q = chart.q();
        let dx: Vec<BigradedForm> = (0..q).map(|a| BigradedForm::dx(chart, a)).collect();
        let mut brackets = BTreeMap::new();
        for a in 0..q {
            for b in 0..q {
                brackets.insert((a, b), omega1_bracket_extended(hs, &dx[a], &dx[b])?);
            }
        }
        Ok(BasisData {
            dx,
            images: (0..q).map(|a| hs.image(a)).collect(),
            brackets,
        })
    }
}

fn without(args: &[usize], skip: &[usize]) -> Vec<usize> {
    args.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, &a)| a)
        .collect()
}

/// `(δQ)(dx^{a_0}, …, dx^{a_k})` for the multi-index `args`.
fn delta_value(chart: &Chart, data: &BasisData, q: &Multivector, args: &[usize]) -> Result<Poly> {
    let mut out = chart.zero();
    for i in 0..args.len() {
        let rest: Vec<BigradedForm> = without(args, &[i]).iter().map(|&a| data.dx[a].clone()).collect();
        let v = data.images[args[i]].apply(chart, &q.evaluate(&rest)?);
        if i % 2 == 0 {
            out += v;
        } else {
            out -= v;
        }
    }
    for i in 0..args.len() {
        for j in i + 1..args.len() {
            let mut forms = vec![data.brackets[&(args[i], args[j])].clone()];
            forms.extend(without(args, &[i, j]).iter().map(|&a| data.dx[a].clone()));
            let v = q.evaluate(&forms)?;
            if (i + j) % 2 == 0 {
                out += v;
            } else {
                out -= v;
            }
        }
    }
    Ok(out)
}

fn coboundary_with(hs: &HamStructure, data: &BasisData, q: &Multivector) -> Result<Multivector> {
    let chart = hs.chart();
    if !q.is_in_e(chart) {
        return Err(Error::NotEMultivector);
    }
    let degrees = q.degrees();
    let mut out = Multivector::zero(chart.n());
    for k in degrees {
        let qk = q.part_of_degree(k);
        for idx in multi_indices(chart.q(), k + 1) {
            out.add_term(&idx, delta_value(chart, data, &qk, &idx)?);
        }
    }
    Ok(out)
}

/// Twisted coboundary `δ` on `Γ∧E` (transversal structures only).
pub fn coboundary(hs: &HamStructure, q: &Multivector) -> Result<Multivector> {
    hs.require_transversal()?;
    coboundary_with(hs, &BasisData::new(hs)?, q)
}

/// The basic Lichnerowicz–Poisson coboundary `δQ = −p_{∧E}[W, Q]`.
pub fn lp_coboundary(hs: &HamStructure, q: &Multivector) -> Result<Multivector> {
    let chart = hs.chart();
    if !q.is_in_e(chart) {
        return Err(Error::NotEMultivector);
    }
    Ok(-schouten(chart, &hs.bivector(), q).project_e(chart))
}

/// Right-hand side of the `δ²` formula on the multi-index `args` (length `k + 2`):
/// `Σ_{i<j} (−1)^{i+j} Δ_h(α_i,α_j)(Q(…)) + Σ_{i<j<l} (−1)^{i+j+l} Q(Σ_cycl {α_l,{α_i,α_j}′}′, …)`.
fn delta_square_rhs_value(
    hs: &HamStructure,
    data: &BasisData,
    defects: &BTreeMap<(usize, usize), VectorField>,
    q: &Multivector,
    args: &[usize],
) -> Result<Poly> {
    let chart = hs.chart();
    let dx = |ids: Vec<usize>| ids.into_iter().map(|a| data.dx[a].clone()).collect::<Vec<_>>();
    let mut out = chart.zero();
    let m = args.len();
    for i in 0..m {
        for j in i + 1..m {
            let v = defects[&(args[i], args[j])].apply(chart, &q.evaluate(&dx(without(args, &[i, j])))?);
            if (i + j) % 2 == 0 {
                out += v;
            } else {
                out -= v;
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for l in j + 1..m {
                let (a, b, c) = (args[i], args[j], args[l]);
                let mut cyc = BigradedForm::zero(chart.n());
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    cyc = cyc + omega1_bracket_extended(hs, &data.dx[z], &data.brackets[&(x, y)])?;
                }
                let mut forms = vec![cyc];
                forms.extend(dx(without(args, &[i, j, l])));
                let v = q.evaluate(&forms)?;
                if (i + j + l) % 2 == 0 {
                    out += v;
                } else {
                    out -= v;
                }
            }
        }
    }
    Ok(out)
}

/// `δ(δQ)` and the right side of the `δ²` formula, both as `(k+2)`-multivectors.
pub fn delta_square_sides(hs: &HamStructure, q: &Multivector) -> Result<(Multivector, Multivector)> {
    hs.require_transversal()?;
    let chart = hs.chart();
    let data = BasisData::new(hs)?;
    let mut defects = BTreeMap::new();
    for a in 0..chart.q() {
        for b in 0..chart.q() {
            defects.insert((a, b), delta_defect(hs, &data.dx[a], &data.dx[b])?);
        }
    }
    let direct = coboundary_with(hs, &data, &coboundary_with(hs, &data, q)?)?;
    let mut rhs = Multivector::zero(chart.n());
    for k in q.degrees() {
        let qk = q.part_of_degree(k);
        for idx in multi_indices(chart.q(), k + 2) {
            rhs.add_term(&idx, delta_square_rhs_value(hs, &data, &defects, &qk, &idx)?);
        }
    }
    Ok((direct, rhs))
}

/// `δ²Q − RHS`; zero for every cochain.
pub fn verify_delta_square(hs: &HamStructure, q: &Multivector) -> Result<Multivector> {
    let (direct, rhs) = delta_square_sides(hs, q)?;
    Ok(direct - rhs)
}

/// `(c)*X_1^X_2 + …`, or `0`.
pub fn format_multivector(chart: &Chart, m: &Multivector) -> String {
    let parts: Vec<String> = m
        .terms()
        .map(|(key, c)| {
            let basis: Vec<String> = key.iter().map(|i| format!("X_{}", i + 1)).collect();
            let b = if basis.is_empty() {
                "1".to_string()
            } else {
                basis.join("^")
            };
            format!("({})*{}", chart.format(c), b)
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn print_multivector(chart: &Chart) -> impl Fn(&Multivector) -> String + '_ {
    move |m| format_multivector(chart, m)
}

fn print_form(chart: &Chart) -> impl Fn(&BigradedForm) -> String + '_ {
    move |m| {
        let parts: Vec<String> = m
            .terms()
            .map(|(key, c)| {
                let basis: Vec<String> = key
                    .iter()
                    .map(|i| format!("d{}", chart.transverse_names()[*i]))
                    .collect();
                let b = if basis.is_empty() {
                    "1".to_string()
                } else {
                    basis.join("^")
                };
                format!("({})*{}", chart.format(c), b)
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Truncation-relative `H^k_tw = ker δ / (im δ ∩ ker δ)`.
pub fn twisted_cohomology(hs: &HamStructure, k: usize, max_degree: u32, with_basis: bool) -> Result<CohomologyResult> {
    let cx = TruncatedComplex::new(hs.clone(), max_degree)?;
    let data = BasisData::new(hs)?;
    let source = cx.basis(k);
    let previous = if k == 0 {
        Vec::new()
    } else {
        cx.basis_of_degree(k - 1, max_degree + 1)
    };
    let printer = print_multivector(hs.chart());
    quotient(
        "twisted",
        k,
        max_degree,
        &source,
        &previous,
        |q| coboundary_with(hs, &data, q),
        with_basis.then_some(&printer as &dyn Fn(&Multivector) -> String),
    )
}

/// Basic Lichnerowicz–Poisson cohomology on foliated `E`-multivectors.
pub fn basic_lp_cohomology(hs: &HamStructure, k: usize, max_degree: u32, with_basis: bool) -> Result<CohomologyResult> {
    if !classify(hs)?.hamiltonian.passed() {
        return Err(Error::NotHamiltonian);
    }
    let chart = hs.chart();
    let w = hs.bivector();
    let dw = lp_coboundary(hs, &w)?;
    if !dw.is_zero() {
        return Err(Error::Internal(format!("fundamental class is not a cocycle: {dw:?}")));
    }
    let support: Vec<usize> = (0..chart.q()).collect();
    let source = truncated_basis(chart.n(), chart.q(), k, &support, max_degree);
    let previous = if k == 0 {
        Vec::new()
    } else {
        truncated_basis(chart.n(), chart.q(), k - 1, &support, max_degree + 1)
    };
    let printer = print_multivector(chart);
    quotient(
        "lp-basic",
        k,
        max_degree,
        &source,
        &previous,
        |q| lp_coboundary(hs, q),
        with_basis.then_some(&printer as &dyn Fn(&Multivector) -> String),
    )
}

/// Basic de Rham cohomology: foliated forms (only `dx` factors, coefficients in the
/// transverse coordinates) under `d`.
pub fn basic_derham_cohomology(chart: &Chart, k: usize, max_degree: u32, with_basis: bool) -> Result<CohomologyResult> {
    let support: Vec<usize> = (0..chart.q()).collect();
    let source: Vec<BigradedForm> = truncated_basis(chart.n(), chart.q(), k, &support, max_degree);
    let previous: Vec<BigradedForm> = if k == 0 {
        Vec::new()
    } else {
        truncated_basis(chart.n(), chart.q(), k - 1, &support, max_degree + 1)
    };
    let printer = print_form(chart);
    quotient(
        "basic-derham",
        k,
        max_degree,
        &source,
        &previous,
        |f| Ok(exterior_d(chart, f)),
        with_basis.then_some(&printer as &dyn Fn(&BigradedForm) -> String),
    )
}

/// Matrix of `δ^{(k)}` on `C^k_D` in the coordinates `(multi-index, monomial)` of its
/// image, together with the matrix of `δ^{(k+1)} ∘ δ^{(k)}` and of the `δ²` formula's
/// right side in a shared coordinate system.
pub struct DeltaSquareMatrices {
    pub direct: RationalMatrix,
    pub formula: RationalMatrix,
}

pub fn delta_square_matrices(hs: &HamStructure, k: usize, max_degree: u32) -> Result<DeltaSquareMatrices> {
    let cx = TruncatedComplex::new(hs.clone(), max_degree)?;
    let mut direct = Vec::new();
    let mut formula = Vec::new();
    for b in cx.basis(k) {
        let (d, f) = delta_square_sides(hs, &b)?;
        direct.push(d);
        formula.push(f);
    }
    let coords = Coordinates::new(direct.iter().chain(&formula));
    Ok(DeltaSquareMatrices {
        direct: coords.matrix(&direct),
        formula: coords.matrix(&formula),
    })
}

/// Matrix of `δ^{(k)}` on `C^k_D` and of `δ^{(k+1)}` on the span of the images, such that
/// their product is the matrix of `δ ∘ δ`.
pub fn composed_delta_matrices(
    hs: &HamStructure,
    k: usize,
    max_degree: u32,
) -> Result<(RationalMatrix, RationalMatrix)> {
    let cx = TruncatedComplex::new(hs.clone(), max_degree)?;
    let data = BasisData::new(hs)?;
    let chart = hs.chart();
    let first: Vec<Multivector> = cx
        .basis(k)
        .iter()
        .map(|b| coboundary_with(hs, &data, b))
        .collect::<Result<_>>()?;
    let mid = Coordinates::new(&first);
    let m1 = mid.matrix(&first);
    // δ^{(k+1)} applied to the basis element behind each middle coordinate
    let mut ordered = vec![Multivector::zero(chart.n()); mid.index.len()];
    for ((key, m), &i) in &mid.index {
        ordered[i] = Multivector::term(key, Poly::monomial(m.clone(), Rational::from_integer(1.into())));
    }
    let second: Vec<Multivector> = ordered
        .iter()
        .map(|b| coboundary_with(hs, &data, b))
        .collect::<Result<_>>()?;
    let out = Coordinates::new(&second);
    Ok((m1, out.matrix(&second)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex_a() -> HamStructure {
        HamStructure::from_entries(Chart::flat(&["x1", "x2"], &["y3"]).unwrap(), &[(0, 1, "1")], &[]).unwrap()
    }

    #[test]
    fn dimensions_and_bases() {
        assert_eq!(multi_indices(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(multi_indices(2, 3).is_empty());
        assert_eq!(binomial(5, 2), 10);
        let cx = TruncatedComplex::new(ex_a(), 2).unwrap();
        for k in 0..=3 {
            assert_eq!(cx.basis(k).len(), cx.dimension(k));
        }
        assert_eq!(cx.dimension(1), 20);
    }

    #[test]
    fn coboundary_of_functions() {
        let a = ex_a();
        let c = a.chart();
        let d = coboundary(&a, &Multivector::scalar(c.coord(0))).unwrap();
        assert_eq!(d, Multivector::term(&[1], c.constant(-1)));
        assert!(coboundary(&a, &Multivector::scalar(c.parse("y3^2 + 3").unwrap()))
            .unwrap()
            .is_zero());
        let lp = lp_coboundary(&a, &Multivector::scalar(c.coord(0))).unwrap();
        assert_eq!(lp, d);
        let vertical = Multivector::term(&[2], c.one());
        assert!(matches!(coboundary(&a, &vertical), Err(Error::NotEMultivector)));
    }

    #[test]
    fn twisted_dimensions() {
        let a = ex_a();
        for d in 0..3 {
            let r = twisted_cohomology(&a, 0, d, false).unwrap();
            assert_eq!(r.dim_twisted, d as usize + 1);
        }
        assert_eq!(twisted_cohomology(&a, 3, 1, false).unwrap().dim_cochains, 0);
        let r = basic_derham_cohomology(a.chart(), 2, 0, false).unwrap();
        assert_eq!((r.dim_kernel, r.dim_image_in_kernel, r.dim_twisted), (1, 1, 0));
        let b = HamStructure::from_entries(a.chart().clone(), &[], &[(0, 0, "1")]).unwrap();
        assert!(twisted_cohomology(&b, 0, 1, false).is_err());
    }

    #[test]
    fn delta_square_on_twisted_chart() {
        let chart = Chart::with_t(&["x1", "x2"], &["y3"], &[(0, 0, "x2*y3")]).unwrap();
        let c = HamStructure::from_entries(chart, &[(0, 1, "1")], &[]).unwrap();
        let y3 = c.chart().coord(2);
        let (direct, rhs) = delta_square_sides(&c, &Multivector::scalar(y3.clone())).unwrap();
        // −Δ_h(dx1,dx2)(y3) with Δ_h(dx1,dx2) = −y3 ∂/∂y3
        assert_eq!(direct, Multivector::term(&[0, 1], y3));
        assert_eq!(direct, rhs);
        let (direct, _) = delta_square_sides(&c, &Multivector::scalar(c.chart().coord(0))).unwrap();
        assert!(direct.is_zero());
        let m = delta_square_matrices(&c, 0, 1).unwrap();
        assert!(!m.direct.is_zero());
        assert_eq!(m.direct, m.formula);
    }
}
