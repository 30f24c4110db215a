//! Exterior derivative and its bigraded pieces, Lie derivatives, brackets of vector
//! fields, the Nijenhuis tensor of `p_E` and the Schouten–Nijenhuis bracket.

mod schouten;

pub use schouten::schouten;

use crate::error::{Error, Result};
use crate::expr::Poly;
use crate::foliation::{contract, BigradedForm, Chart, Summand, VectorField};

/// Coordinate exterior derivative of a form written in `dx^a, dy^u`.
fn coordinate_d(omega: &BigradedForm) -> BigradedForm {
    let n = omega.n();
    let mut out = BigradedForm::zero(n);
    for (key, c) in omega.terms() {
        for i in 0..n {
            if key.contains(&i) || !c.depends_on(i) {
                continue;
            }
            let mut idx = Vec::with_capacity(key.len() + 1);
            idx.push(i);
            idx.extend_from_slice(key);
            out.add_term(&idx, c.partial(i));
        }
    }
    out
}

/// `dω`, computed through the coordinate coframe.
pub fn exterior_d(chart: &Chart, omega: &BigradedForm) -> BigradedForm {
    let coord = omega.to_coordinate(chart);
    BigradedForm::from_coordinate(&coordinate_d(&coord), chart)
}

/// `df` of a function.
pub fn differential(chart: &Chart, f: &Poly) -> BigradedForm {
    exterior_d(chart, &BigradedForm::scalar(f.clone()))
}

/// The pieces of `d = d′ + d″ + ∂` of bidegrees (1,0), (0,1) and (2,−1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DComponents {
    pub d_prime: BigradedForm,
    pub d_second: BigradedForm,
    pub partial: BigradedForm,
}

pub fn d_components(chart: &Chart, omega: &BigradedForm) -> DComponents {
    let q = chart.q();
    let n = chart.n();
    let mut out = DComponents {
        d_prime: BigradedForm::zero(n),
        d_second: BigradedForm::zero(n),
        partial: BigradedForm::zero(n),
    };
    for (s, t) in omega.bidegrees(q) {
        let d = exterior_d(chart, &omega.bidegree_part(q, s, t));
        for (key, c) in d.terms() {
            let bd = BigradedForm::bidegree_of(key, q);
            let target = if bd == (s + 1, t) {
                &mut out.d_prime
            } else if bd == (s, t + 1) {
                &mut out.d_second
            } else if t > 0 && bd == (s + 2, t - 1) {
                &mut out.partial
            } else {
                unreachable!("d produced bidegree {bd:?} from ({s}, {t})")
            };
            target.add_term(key, c.clone());
        }
    }
    out
}

pub fn d_prime(chart: &Chart, omega: &BigradedForm) -> BigradedForm {
    d_components(chart, omega).d_prime
}

pub fn d_second(chart: &Chart, omega: &BigradedForm) -> BigradedForm {
    d_components(chart, omega).d_second
}

/// `d′f`, the (1,0)-part of `df`: components `X_a f`.
pub fn d_prime_fn(chart: &Chart, f: &Poly) -> BigradedForm {
    let comps: Vec<Poly> = (0..chart.q()).map(|a| chart.frame_derivative(a, f)).collect();
    BigradedForm::transverse_one_form(chart, &comps)
}

/// `L_X ω = d i(X) ω + i(X) d ω`.
pub fn lie(chart: &Chart, x: &VectorField, omega: &BigradedForm) -> BigradedForm {
    exterior_d(chart, &contract(x, omega)) + contract(x, &exterior_d(chart, omega))
}

/// `(L′_X ω, L″_X ω)` for `X ∈ Γ E`.
pub fn lie_split(chart: &Chart, x: &VectorField, omega: &BigradedForm) -> Result<(BigradedForm, BigradedForm)> {
    if !x.is_in_e() {
        return Err(Error::NotInE);
    }
    let ix = contract(x, omega);
    let d_ix = d_components(chart, &ix);
    let d_w = d_components(chart, omega);
    let lp = d_ix.d_prime + contract(x, &d_w.d_prime);
    let ls = d_ix.d_second + contract(x, &d_w.d_second);
    Ok((lp, ls))
}

/// `L′_X ω` alone.
pub fn lie_prime(chart: &Chart, x: &VectorField, omega: &BigradedForm) -> Result<BigradedForm> {
    Ok(lie_split(chart, x, omega)?.0)
}

/// Lie bracket `[X, Y]`, computed in the coordinate frame.
pub fn vf_bracket(chart: &Chart, x: &VectorField, y: &VectorField) -> VectorField {
    let xc = x.to_coordinate(chart);
    let yc = y.to_coordinate(chart);
    let n = chart.n();
    let comps: Vec<Poly> = (0..n)
        .map(|i| {
            let mut c = Poly::zero(n);
            for j in 0..n {
                if !xc[j].is_zero() && yc[i].depends_on(j) {
                    c += &xc[j] * &yc[i].partial(j);
                }
                if !yc[j].is_zero() && xc[i].depends_on(j) {
                    c -= &yc[j] * &xc[i].partial(j);
                }
            }
            c
        })
        .collect();
    VectorField::from_coordinate(chart, &comps)
}

/// `N_E(X,Y) = [p_E X, p_E Y] − p_E[p_E X, Y] − p_E[X, p_E Y] + p_E[X, Y]`.
pub fn nijenhuis_e(chart: &Chart, x: &VectorField, y: &VectorField) -> VectorField {
    let px = x.project(Summand::E);
    let py = y.project(Summand::E);
    let b = |u: &VectorField, v: &VectorField| vf_bracket(chart, u, v);
    &(&(&b(&px, &py) - &b(&px, y).project(Summand::E)) - &b(x, &py).project(Summand::E)) + &b(x, y).project(Summand::E)
}

/// `τ^u_{ce}` (zero-based `c, e < q`, `u < p`).
pub fn tau(chart: &Chart, u: usize, c: usize, e: usize) -> Poly {
    let q = chart.q();
    let mut out = chart.t(c, u).partial(e) - chart.t(e, u).partial(c);
    for v in 0..chart.p() {
        let tc = chart.t(c, v);
        let te = chart.t(e, v);
        if !tc.is_zero() {
            out += tc * &chart.t(e, u).partial(q + v);
        }
        if !te.is_zero() {
            out -= te * &chart.t(c, u).partial(q + v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex_c() -> Chart {
        Chart::with_t(&["x1", "x2"], &["y3"], &[(0, 0, "x2*y3")]).unwrap()
    }

    fn flat() -> Chart {
        Chart::flat(&["x1", "x2"], &["y3"]).unwrap()
    }

    #[test]
    fn d_of_coordinates() {
        let c = flat();
        assert_eq!(differential(&c, &c.coord(0)), BigradedForm::dx(&c, 0));
        assert_eq!(differential(&c, &c.coord(2)), BigradedForm::theta(&c, 0));
    }

    #[test]
    fn d_theta_in_twisted_chart() {
        // d(dy3 + x2 y3 dx1) = dx2∧(y3 dx1) + x2 dy3∧dx1 with dy3 = θ³ - x2 y3 dx1
        let c = ex_c();
        let th = BigradedForm::theta(&c, 0);
        let mut expected = BigradedForm::zero(3);
        expected.add_term(&[0, 1], c.parse("-y3").unwrap());
        expected.add_term(&[2, 0], c.parse("x2").unwrap());
        assert_eq!(exterior_d(&c, &th), expected);
        let parts = d_components(&c, &th);
        assert_eq!(parts.partial, BigradedForm::term(&[0, 1], c.parse("-y3").unwrap()));
        assert_eq!(parts.d_prime, BigradedForm::term(&[2, 0], c.parse("x2").unwrap()));
        assert!(parts.d_second.is_zero());
    }

    #[test]
    fn split_of_function() {
        let c = flat();
        let f = c.parse("x1*y3").unwrap();
        let parts = d_components(&c, &BigradedForm::scalar(f.clone()));
        assert_eq!(parts.d_prime, BigradedForm::term(&[0], c.parse("y3").unwrap()));
        assert_eq!(parts.d_second, BigradedForm::term(&[2], c.parse("x1").unwrap()));
        assert!(parts.partial.is_zero());
        assert_eq!(d_prime_fn(&c, &f), parts.d_prime);
    }

    #[test]
    fn lie_examples() {
        let c = flat();
        let x1 = VectorField::frame(&c, 0);
        assert!(lie(&c, &x1, &BigradedForm::scalar(c.constant(5))).is_zero());
        assert!(lie(&c, &x1, &BigradedForm::dx(&c, 0)).is_zero());
        let v = x1.scale(&c.coord(0));
        assert_eq!(lie(&c, &v, &BigradedForm::dx(&c, 0)), BigradedForm::dx(&c, 0));
        let x2 = VectorField::frame(&c, 1);
        let a = BigradedForm::dx(&c, 0).scale(&c.coord(0));
        assert!(lie_prime(&c, &x2, &a).unwrap().is_zero());
        let b = BigradedForm::dx(&c, 1).scale(&c.coord(0));
        assert_eq!(lie_prime(&c, &x1, &b).unwrap(), BigradedForm::dx(&c, 1));
        assert!(lie_split(&c, &VectorField::frame(&c, 2), &a).is_err());
    }

    #[test]
    fn bracket_of_frame_fields() {
        let c = ex_c();
        let x1 = VectorField::frame(&c, 0);
        let x2 = VectorField::frame(&c, 1);
        // [∂1 - x2 y3 ∂3, ∂2] = y3 ∂3
        let expected = VectorField::frame(&c, 2).scale(&c.coord(2));
        assert_eq!(vf_bracket(&c, &x1, &x2), expected);
        assert_eq!(tau(&c, 0, 0, 1), c.coord(2));
        assert_eq!(nijenhuis_e(&c, &x1, &x2), expected);
        assert!(vf_bracket(&c, &x1, &x1).is_zero());
        let f = flat();
        assert!(vf_bracket(&f, &VectorField::frame(&f, 0), &VectorField::frame(&f, 1)).is_zero());
    }
}
