#![allow(dead_code)]

use folham::cli::find_example;
use folham::expr::{integer, Monomial, Poly, Rational};
use folham::foliation::{Alternating, BigradedForm, Chart, Multivector, VectorField};
use folham::hamiltonian::HamStructure;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn example(name: &str) -> HamStructure {
    find_example(name).unwrap().spec().unwrap().structure
}

pub const ALL_EXAMPLES: [&str; 7] = ["EX-A", "EX-B", "EX-C", "EX-D", "EX-E", "EX-F", "EX-G"];

/// Seeded generator of random polynomial data over a chart.
pub struct Gen {
    pub rng: StdRng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    /// Sparse polynomial in the variables `vars`, total degree `<= deg`, small integer
    /// coefficients.
    pub fn poly_in(&mut self, chart: &Chart, vars: &[usize], deg: u32) -> Poly {
        let mut out = chart.zero();
        for m in Monomial::up_to_degree_in(chart.n(), vars, deg) {
            if self.rng.gen_bool(0.35) {
                let c = self.rng.gen_range(-3i64..=3);
                out += Poly::monomial(m, integer(c));
            }
        }
        out
    }

    pub fn poly(&mut self, chart: &Chart, deg: u32) -> Poly {
        let all: Vec<usize> = (0..chart.n()).collect();
        self.poly_in(chart, &all, deg)
    }

    pub fn foliated(&mut self, chart: &Chart, deg: u32) -> Poly {
        let xs: Vec<usize> = (0..chart.q()).collect();
        self.poly_in(chart, &xs, deg)
    }

    /// Random `k`-element of the frame algebra with coefficients from `coeff`.
    pub fn alternating<K>(
        &mut self,
        chart: &Chart,
        k: usize,
        mut coeff: impl FnMut(&mut Self) -> Poly,
    ) -> Alternating<K> {
        let mut out = Alternating::zero(chart.n());
        for idx in folham::cohomology::multi_indices(chart.n(), k) {
            if self.rng.gen_bool(0.6) {
                out.add_term(&idx, coeff(self));
            }
        }
        out
    }

    pub fn form(&mut self, chart: &Chart, k: usize) -> BigradedForm {
        self.alternating(chart, k, |g| g.poly(chart, 2))
    }

    pub fn mixed_form(&mut self, chart: &Chart) -> BigradedForm {
        let k = self.rng.gen_range(0..=chart.n().min(3));
        self.form(chart, k)
    }

    pub fn field(&mut self, chart: &Chart) -> VectorField {
        let comps: Vec<Poly> = (0..chart.n()).map(|_| self.poly(chart, 2)).collect();
        VectorField::from_components(chart.q(), &comps)
    }

    /// Section of `E`.
    pub fn e_field(&mut self, chart: &Chart) -> VectorField {
        let comps: Vec<Poly> = (0..chart.n())
            .map(|i| {
                if i < chart.q() {
                    self.poly(chart, 2)
                } else {
                    chart.zero()
                }
            })
            .collect();
        VectorField::from_components(chart.q(), &comps)
    }

    /// Foliated field: transverse components independent of the leaf coordinates.
    pub fn foliated_field(&mut self, chart: &Chart) -> VectorField {
        let comps: Vec<Poly> = (0..chart.n())
            .map(|i| {
                if i < chart.q() {
                    self.foliated(chart, 2)
                } else {
                    self.poly(chart, 1)
                }
            })
            .collect();
        VectorField::from_components(chart.q(), &comps)
    }

    /// `α_a dx^a` with coefficients from `coeff`.
    pub fn one_form(&mut self, chart: &Chart, mut coeff: impl FnMut(&mut Self) -> Poly) -> BigradedForm {
        let comps: Vec<Poly> = (0..chart.q()).map(|_| coeff(self)).collect();
        BigradedForm::transverse_one_form(chart, &comps)
    }

    pub fn e_multivector(&mut self, chart: &Chart, k: usize) -> Multivector {
        let mut out = Multivector::zero(chart.n());
        for idx in folham::cohomology::multi_indices(chart.q(), k) {
            out.add_term(&idx, self.poly(chart, 1));
        }
        out
    }

    /// Random chart with `q` transverse and `p` leaf coordinates; `t` of degree `<= 2`
    /// unless `flat`.
    pub fn chart(&mut self, q: usize, p: usize, flat: bool) -> Chart {
        let xs: Vec<String> = (1..=q).map(|i| format!("x{i}")).collect();
        let ys: Vec<String> = (q + 1..=q + p).map(|i| format!("y{i}")).collect();
        let n = q + p;
        let base = Chart::new(xs.clone(), ys.clone(), vec![vec![Poly::zero(n); p]; q]).unwrap();
        if flat {
            return base;
        }
        let t = (0..q)
            .map(|_| {
                (0..p)
                    .map(|_| {
                        if self.rng.gen_bool(0.5) {
                            self.poly(&base, 2)
                        } else {
                            base.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Chart::new(xs, ys, t).unwrap()
    }

    /// Random skew structure with degree-`<= 2` entries; `h` foliated with probability
    /// `foliated_p`, `k` nonzero with probability `vertical_p`.
    pub fn structure(&mut self, chart: &Chart, foliated_p: f64, vertical_p: f64) -> HamStructure {
        let (q, p) = (chart.q(), chart.p());
        let foliated = self.rng.gen_bool(foliated_p);
        let mut h = vec![vec![chart.zero(); q]; q];
        for a in 0..q {
            for b in a + 1..q {
                let e = if foliated {
                    self.foliated(chart, 2)
                } else {
                    self.poly(chart, 2)
                };
                h[b][a] = -&e;
                h[a][b] = e;
            }
        }
        let vertical = self.rng.gen_bool(vertical_p);
        let k = (0..q)
            .map(|_| {
                (0..p)
                    .map(|_| {
                        if vertical && self.rng.gen_bool(0.5) {
                            self.poly(chart, 1)
                        } else {
                            chart.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        HamStructure::new(chart.clone(), h, k).unwrap()
    }
}

/// Rank of a rational matrix by plain Gaussian elimination (independent of the library's
/// fraction-free routine).
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim` of the kernel of the linear map sending each basis element to the tuple
/// `conditions(b)`, computed by expanding into monomial coordinates.
pub fn kernel_dimension<T>(basis: &[T], conditions: impl Fn(&T) -> Vec<Poly>) -> usize {
    let images: Vec<Vec<Poly>> = basis.iter().map(&conditions).collect();
    let mut keys: Vec<(usize, Monomial)> = Vec::new();
    for img in &images {
        for (slot, p) in img.iter().enumerate() {
            for (m, _) in p.terms() {
                if !keys.contains(&(slot, m.clone())) {
                    keys.push((slot, m.clone()));
                }
            }
        }
    }
    // rows = coordinates, columns = basis elements
    let rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|(slot, m)| images.iter().map(|img| img[*slot].coefficient(m)).collect())
        .collect();
    basis.len() - rank(rows)
}

/// Monomials of degree `<= d` in the variables `vars`, as polynomials.
pub fn monomials(chart: &Chart, vars: &[usize], d: u32) -> Vec<Poly> {
    Monomial::up_to_degree_in(chart.n(), vars, d)
        .into_iter()
        .map(|m| Poly::monomial(m, integer(1)))
        .collect()
}

/// Brute-force Gelfand–Dorfman bracket `[H,H](α,β,γ)` for a flat chart without leaves,
/// written out in coordinates: `Σ_cycl 2 <γ, H L_{Hα} β>` with
/// `(L_V β)_j = V^l ∂_l β_j + β_l ∂_j V^l` and `(Hα)^b = α_a h^{ab}`.
pub fn brute_force_gd(h: &[Vec<Poly>], forms: [&[Poly]; 3]) -> Poly {
    let q = h.len();
    let n = forms[0][0].nvars();
    let apply = |alpha: &[Poly]| -> Vec<Poly> {
        (0..q)
            .map(|b| (0..q).fold(Poly::zero(n), |acc, a| acc + &alpha[a] * &h[a][b]))
            .collect()
    };
    let lie = |v: &[Poly], beta: &[Poly]| -> Vec<Poly> {
        (0..q)
            .map(|j| {
                (0..q).fold(Poly::zero(n), |acc, l| {
                    acc + &v[l] * &beta[j].partial(l) + &beta[l] * &v[l].partial(j)
                })
            })
            .collect()
    };
    let mut total = Poly::zero(n);
    for i in 0..3 {
        let (a, b, c) = (forms[i], forms[(i + 1) % 3], forms[(i + 2) % 3]);
        let inner = lie(&apply(a), b);
        let outer = apply(&inner);
        for j in 0..q {
            total += &(&c[j] * &outer[j]) * &Poly::from_int(n, 2);
        }
    }
    total
}

/// `Σ_cycl(i,j,k) π^{il} ∂_l π^{jk}` for every triple; zero iff the bivector `π` on a flat
/// chart is Poisson.
pub fn bivector_jacobi_is_zero(pi: &[Vec<Poly>]) -> bool {
    let m = pi.len();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let mut s = Poly::zero(pi[0][0].nvars());
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for l in 0..m {
                        s += &pi[a][l] * &pi[b][c].partial(l);
                    }
                }
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
