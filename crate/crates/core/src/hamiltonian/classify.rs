use serde::{Deserialize, Serialize};

use crate::calculus::{differential, nijenhuis_e, tau, vf_bracket};
use crate::cohomology::RationalMatrix;
use crate::error::Result;
use crate::expr::{Poly, Rational};
use crate::foliation::{Chart, VectorField};

use super::HamStructure;

/// The nonzero quantity that makes a condition fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Scalar(Poly),
    Field(VectorField),
}

impl Residual {
    pub fn format(&self, chart: &Chart) -> String {
        match self {
            Residual::Scalar(p) => chart.format(p),
            Residual::Field(v) => v.format(chart),
        }
    }
}

/// Location and value of the first failing instance of a condition. Indices are
/// one-based, matching the coordinate labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: String,
    pub indices: Vec<usize>,
    pub residual: Residual,
}

impl Witness {
    pub fn new(condition: impl Into<String>, indices: &[usize], residual: Residual) -> Self {
        Witness {
            condition: condition.into(),
            indices: indices.iter().map(|i| i + 1).collect(),
            residual,
        }
    }

    pub fn describe(&self, chart: &Chart) -> WitnessReport {
        WitnessReport {
            condition: self.condition.clone(),
            indices: self.indices.clone(),
            residual: self.residual.format(chart),
        }
    }
}

/// Printable form of a [`Witness`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub condition: String,
    pub indices: Vec<usize>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub hamiltonian: Verdict,
    pub strong: Verdict,
    pub transversal: Verdict,
    pub tame: Verdict,
}

impl Classification {
    /// `(hamiltonian, strong, transversal, tame)` as booleans.
    pub fn flags(&self) -> (bool, bool, bool, bool) {
        (
            self.hamiltonian.passed(),
            self.strong.passed(),
            self.transversal.passed(),
            self.tame.passed(),
        )
    }

    /// tame ⇒ strong ⇒ hamiltonian, and transversal ∧ strong ⇒ tame.
    pub fn is_consistent(&self) -> bool {
        let (h, s, t, tame) = self.flags();
        (!tame || s) && (!s || h) && (!(t && s) || tame)
    }
}

/// Cyclic Jacobi sum `Σ_cycl(a,b,c) h^{ad} ∂_d h^{bc}`.
pub fn jacobiator(hs: &HamStructure, a: usize, b: usize, c: usize) -> Poly {
    let chart = hs.chart();
    let mut out = chart.zero();
    for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
        for d in 0..hs.q() {
            let hid = hs.h(i, d);
            if !hid.is_zero() {
                out += hid * &hs.h(j, k).partial(d);
            }
        }
    }
    out
}

fn hamiltonian_verdict(hs: &HamStructure) -> Verdict {
    let chart = hs.chart();
    let q = hs.q();
    for a in 0..q {
        for b in a + 1..q {
            for u in 0..chart.p() {
                let d = hs.h(a, b).partial(q + u);
                if !d.is_zero() {
                    return Verdict::Fail(Witness::new(
                        "h foliated: dh^{ab}/dy^u = 0",
                        &[a, b, q + u],
                        Residual::Scalar(d),
                    ));
                }
            }
        }
    }
    for a in 0..q {
        for b in a + 1..q {
            for c in b + 1..q {
                let j = jacobiator(hs, a, b, c);
                if !j.is_zero() {
                    return Verdict::Fail(Witness::new(
                        "Jacobi: sum_cycl h^{ad} d_d h^{bc} = 0",
                        &[a, b, c],
                        Residual::Scalar(j),
                    ));
                }
            }
        }
    }
    Verdict::Pass
}

/// `[H(dx^a), H(dx^b)] − H(dh^{ab})`.
pub fn strong_residual(hs: &HamStructure, a: usize, b: usize) -> Result<VectorField> {
    let chart = hs.chart();
    let br = vf_bracket(chart, &hs.image(a), &hs.image(b));
    Ok(br - hs.apply_lenient(&differential(chart, hs.h(a, b)))?)
}

fn strong_verdict(hs: &HamStructure, hamiltonian: &Verdict) -> Result<Verdict> {
    if let Verdict::Fail(w) = hamiltonian {
        return Ok(Verdict::Fail(w.clone()));
    }
    for a in 0..hs.q() {
        for b in a + 1..hs.q() {
            let r = strong_residual(hs, a, b)?;
            if !r.is_zero() {
                return Ok(Verdict::Fail(Witness::new(
                    "[H(dx^a), H(dx^b)] = H(dh^{ab})",
                    &[a, b],
                    Residual::Field(r),
                )));
            }
        }
    }
    Ok(Verdict::Pass)
}

fn transversal_verdict(hs: &HamStructure) -> Verdict {
    let q = hs.q();
    for a in 0..q {
        for u in 0..hs.chart().p() {
            if !hs.k(a, u).is_zero() {
                return Verdict::Fail(Witness::new(
                    "k^{au} = 0",
                    &[a, q + u],
                    Residual::Scalar(hs.k(a, u).clone()),
                ));
            }
        }
    }
    Verdict::Pass
}

/// `Σ_{c,e} h^{ac} h^{be} τ^u_{ce}`.
pub fn tame_sum(hs: &HamStructure, a: usize, b: usize, u: usize) -> Poly {
    let chart = hs.chart();
    let mut out = chart.zero();
    for c in 0..hs.q() {
        if hs.h(a, c).is_zero() {
            continue;
        }
        for e in 0..hs.q() {
            if c == e || hs.h(b, e).is_zero() {
                continue;
            }
            let t = tau(chart, u, c, e);
            if !t.is_zero() {
                out += &(hs.h(a, c) * hs.h(b, e)) * &t;
            }
        }
    }
    out
}

/// The τ-criterion alone: `h^{ac} h^{be} τ^u_{ce} = 0` for all `a, b, u`.
pub fn tau_criterion(hs: &HamStructure) -> Verdict {
    let q = hs.q();
    for a in 0..q {
        for b in 0..q {
            for u in 0..hs.chart().p() {
                let s = tame_sum(hs, a, b, u);
                if !s.is_zero() {
                    return Verdict::Fail(Witness::new(
                        "h^{ac} h^{be} tau^u_{ce} = 0",
                        &[a, b, q + u],
                        Residual::Scalar(s),
                    ));
                }
            }
        }
    }
    Verdict::Pass
}

/// The Nijenhuis criterion alone: `N_E(H dx^a, H dx^b) = 0` for all `a < b`.
pub fn nijenhuis_criterion(hs: &HamStructure) -> Verdict {
    let chart = hs.chart();
    for a in 0..hs.q() {
        for b in a + 1..hs.q() {
            let n = nijenhuis_e(chart, &hs.image(a), &hs.image(b));
            if !n.is_zero() {
                return Verdict::Fail(Witness::new("N_E(H(dx^a), H(dx^b)) = 0", &[a, b], Residual::Field(n)));
            }
        }
    }
    Verdict::Pass
}

pub fn classify(hs: &HamStructure) -> Result<Classification> {
    let hamiltonian = hamiltonian_verdict(hs);
    let strong = strong_verdict(hs, &hamiltonian)?;
    let transversal = transversal_verdict(hs);
    let tame = match (&hamiltonian, &transversal) {
        (Verdict::Fail(w), _) | (_, Verdict::Fail(w)) => Verdict::Fail(w.clone()),
        _ => tau_criterion(hs),
    };
    let out = Classification {
        hamiltonian,
        strong,
        transversal,
        tame,
    };
    if !out.is_consistent() {
        return Err(crate::Error::Internal(format!(
            "inconsistent classification {:?}",
            out.flags()
        )));
    }
    Ok(out)
}

/// Pointwise dimensions of the characteristic distribution and of the image of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageCheck {
    pub point: Vec<Rational>,
    pub rank_w: usize,
    pub dim_image_cap_tf: usize,
    pub dim_char_dist: usize,
    /// `dim h(ann CharDist)`, computed from a kernel basis of `h`.
    pub dim_h_of_annihilator: usize,
}

impl ImageCheck {
    /// `h(ann CharDist) = H₀ ∩ TF` dimensionally.
    pub fn consistent(&self) -> bool {
        self.dim_h_of_annihilator == self.dim_image_cap_tf
    }
}

fn evaluate_matrix(rows: &[Vec<Poly>], cols: usize, point: &[Rational]) -> Result<RationalMatrix> {
    let vals = rows
        .iter()
        .map(|r| r.iter().map(|e| Ok(e.eval(point)?)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_rows(vals, cols))
}

pub fn image_checks(hs: &HamStructure, points: &[Vec<Rational>]) -> Result<Vec<ImageCheck>> {
    let chart = hs.chart();
    let (q, p) = (chart.q(), chart.p());
    points
        .iter()
        .map(|pt| {
            let h = evaluate_matrix(hs.h_matrix(), q, pt)?;
            let k = evaluate_matrix(hs.k_matrix(), p, pt)?;
            let rank_w = h.rank();
            let dim_image_cap_tf = h.hstack(&k).rank() - rank_w;
            // α = α_a dx^a annihilates CharDist iff α_a h^{ab} = 0; its image is α_a k^{au} ∂_u
            let ann = h.transpose().kernel_basis();
            let images: Vec<Vec<Rational>> = ann
                .iter()
                .map(|alpha| {
                    RationalMatrix::from_rows(vec![alpha.clone()], q)
                        .mul(&k)
                        .row(0)
                        .to_vec()
                })
                .collect();
            let dim_h_of_annihilator = RationalMatrix::from_rows(images, p).rank();
            Ok(ImageCheck {
                point: pt.clone(),
                rank_w,
                dim_image_cap_tf,
                dim_char_dist: p + rank_w,
                dim_h_of_annihilator,
            })
        })
        .collect()
}
