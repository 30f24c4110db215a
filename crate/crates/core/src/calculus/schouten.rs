use crate::foliation::{Chart, Multivector};

/// Right derivative `P ⟵ ∂/∂ζ_i` of a coordinate multivector viewed as a polynomial in
/// odd variables `ζ_j = ∂/∂x^j`.
fn right_derivative(p: &Multivector, i: usize) -> Multivector {
    let mut out = Multivector::zero(p.n());
    for (key, c) in p.terms() {
        if let Some(m) = key.iter().position(|&j| j == i) {
            let mut rest = key.clone();
            rest.remove(m);
            let odd = (key.len() - 1 - m) % 2 == 1;
            out.add_term(&rest, if odd { -c } else { c.clone() });
        }
    }
    out
}

fn coefficient_partial(p: &Multivector, i: usize) -> Multivector {
    p.map_coefficients(|c| c.partial(i))
}

/// Bracket of homogeneous coordinate multivectors of degrees `p` and `q`.
fn homogeneous(a: &Multivector, p: usize, b: &Multivector, q: usize) -> Multivector {
    let n = a.n();
    let mut out = Multivector::zero(n);
    if p + q == 0 {
        return out;
    }
    // [P,Q] = (-1)^{p-1} Σ_i (P⟵∂ζ_i)(∂_i Q) − (-1)^{(p-1)(q-1)} (Q⟵∂ζ_i)(∂_i P)
    let swap_odd = p > 0 && q > 0 && (p - 1) * (q - 1) % 2 == 1;
    for i in 0..n {
        if p > 0 {
            let da = right_derivative(a, i);
            if !da.is_zero() {
                out = out + da.wedge(&coefficient_partial(b, i));
            }
        }
        if q > 0 {
            let db = right_derivative(b, i);
            if !db.is_zero() {
                let t = db.wedge(&coefficient_partial(a, i));
                // when p = 0 the sign factor is (-1)^{-(q-1)} = (-1)^{q-1}
                let odd = if p == 0 { (q - 1) % 2 == 1 } else { swap_odd };
                out = if odd { out + t } else { out - t };
            }
        }
    }
    if p % 2 == 1 {
        out
    } else {
        -out
    }
}

/// Schouten–Nijenhuis bracket, normalized so that it restricts to the Lie bracket on
/// vector fields and `[W,W](df,dg,dk) = 2 Σ_cycl {{f,g},k}` for a bivector `W`.
pub fn schouten(chart: &Chart, a: &Multivector, b: &Multivector) -> Multivector {
    let ac = a.to_coordinate(chart);
    let bc = b.to_coordinate(chart);
    let mut out = Multivector::zero(chart.n());
    for p in ac.degrees() {
        let ap = ac.part_of_degree(p);
        for q in bc.degrees() {
            out = out + homogeneous(&ap, p, &bc.part_of_degree(q), q);
        }
    }
    Multivector::from_coordinate(&out, chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::vf_bracket;
    use crate::foliation::VectorField;

    #[test]
    fn functions_commute() {
        let c = Chart::flat(&["x1", "x2"], &["y3"]).unwrap();
        let f = Multivector::scalar(c.coord(0));
        let g = Multivector::scalar(c.coord(2));
        assert!(schouten(&c, &f, &g).is_zero());
        // [X, f] = X(f) = [f, X]
        let x = Multivector::from_field(&VectorField::frame(&c, 0).scale(&c.coord(1)));
        let expected = Multivector::scalar(c.coord(1));
        assert_eq!(schouten(&c, &x, &Multivector::scalar(c.coord(0))), expected);
        assert_eq!(schouten(&c, &Multivector::scalar(c.coord(0)), &x), expected);
    }

    #[test]
    fn vector_fields_give_lie_bracket() {
        let c = Chart::with_t(&["x1", "x2"], &["y3"], &[(0, 0, "x2*y3")]).unwrap();
        let x = VectorField::frame(&c, 0).scale(&c.parse("x1 + y3").unwrap());
        let y = VectorField::frame(&c, 1) + VectorField::frame(&c, 2).scale(&c.coord(0));
        let s = schouten(&c, &Multivector::from_field(&x), &Multivector::from_field(&y));
        assert_eq!(s, Multivector::from_field(&vf_bracket(&c, &x, &y)));
    }

    #[test]
    fn jacobi_failing_bivector() {
        let c = Chart::flat(&["x1", "x2", "x3"], &[]).unwrap();
        let mut w = Multivector::zero(3);
        w.add_term(&[0, 1], c.coord(2));
        w.add_term(&[1, 2], c.coord(1));
        let s = schouten(&c, &w, &w);
        // {x1,x2} = x3, {x2,x3} = x2: 2·Σ_cycl {{x^a,x^b},x^c} = 2·{x2,x1} = -2 x3
        assert_eq!(s, Multivector::term(&[0, 1, 2], c.parse("-2*x3").unwrap()));
    }
}
