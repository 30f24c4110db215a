use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::expr::{Poly, Rational};

/// Marker for differential forms (coframe `dx^a, θ^u`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Covariant {}

/// Marker for multivectors (frame `X_a, ∂/∂y^u`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contravariant {}

/// Sorts `indices`, returning the sorted list and whether the permutation was odd.
/// `None` if an index repeats (the wedge vanishes).
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut odd = false;
    // insertion sort counts transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Sparse alternating tensor over an `n`-dimensional frame with polynomial coefficients.
///
/// Keys are strictly increasing index lists; index `i < q` is a transverse slot
/// (`dx^a` or `X_a`), `i >= q` a leaf slot (`θ^u` or `∂/∂y^u`). Zero coefficients are
/// never stored.
pub struct Alternating<K> {
    n: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
    _kind: PhantomData<fn() -> K>,
}

/// A differential form in the adapted coframe.
pub type BigradedForm = Alternating<Covariant>;

/// A multivector in the adapted frame.
pub type Multivector = Alternating<Contravariant>;

impl<K> Clone for Alternating<K> {
    fn clone(&self) -> Self {
        Alternating {
            n: self.n,
            terms: self.terms.clone(),
            _kind: PhantomData,
        }
    }
}

impl<K> PartialEq for Alternating<K> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl<K> Eq for Alternating<K> {}

impl<K> fmt::Debug for Alternating<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K> Alternating<K> {
    pub fn zero(n: usize) -> Self {
        Alternating {
            n,
            terms: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    /// Degree-zero element.
    pub fn scalar(f: Poly) -> Self {
        let mut out = Self::zero(f.nvars());
        out.add_term(&[], f);
        out
    }

    /// `coeff` times the basis element with the given (not necessarily sorted) indices.
    pub fn term(indices: &[usize], coeff: Poly) -> Self {
        let mut out = Self::zero(coeff.nvars());
        out.add_term(indices, coeff);
        out
    }

    /// Basis element with coefficient one.
    pub fn basis(n: usize, indices: &[usize]) -> Self {
        Self::term(indices, Poly::one(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · e^{indices}`, normalizing the index order.
    pub fn add_term(&mut self, indices: &[usize], coeff: Poly) {
        assert_eq!(coeff.nvars(), self.n, "coefficient over a different chart");
        assert!(indices.iter().all(|&i| i < self.n), "index out of range");
        if coeff.is_zero() {
            return;
        }
        let Some((key, odd)) = sort_with_sign(indices) else {
            return;
        };
        let coeff = if odd { -coeff } else { coeff };
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Coefficient of `e^{indices}` with the sign of the permutation to sorted order.
    pub fn coefficient(&self, indices: &[usize]) -> Poly {
        match sort_with_sign(indices) {
            None => Poly::zero(self.n),
            Some((key, odd)) => {
                let c = self.terms.get(&key).cloned().unwrap_or_else(|| Poly::zero(self.n));
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Degree-zero coefficient.
    pub fn scalar_part(&self) -> Poly {
        self.coefficient(&[])
    }

    /// Set of total degrees present.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(Vec::len).collect()
    }

    /// The total degree when homogeneous; zero is homogeneous of every degree and
    /// reports `None`.
    pub fn degree(&self) -> Option<usize> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    pub fn part_of_degree(&self, k: usize) -> Self {
        self.filter(|idx| idx.len() == k)
    }

    /// `(s, t)`: number of transverse and leaf slots of a key.
    pub fn bidegree_of(key: &[usize], q: usize) -> (usize, usize) {
        let s = key.iter().filter(|&&i| i < q).count();
        (s, key.len() - s)
    }

    pub fn bidegrees(&self, q: usize) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(|k| Self::bidegree_of(k, q)).collect()
    }

    pub fn bidegree_part(&self, q: usize, s: usize, t: usize) -> Self {
        self.filter(|idx| Self::bidegree_of(idx, q) == (s, t))
    }

    /// Keeps only terms with no leaf slots.
    pub fn transverse_part(&self, q: usize) -> Self {
        self.filter(|idx| idx.iter().all(|&i| i < q))
    }

    pub fn is_transverse(&self, q: usize) -> bool {
        self.terms.keys().all(|idx| idx.iter().all(|&i| i < q))
    }

    pub fn filter(&self, keep: impl Fn(&[usize]) -> bool) -> Self {
        Alternating {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            _kind: PhantomData,
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = Self::zero(self.n);
        for (k, v) in &self.terms {
            out.add_term(k, f(v));
        }
        out
    }

    pub fn scale(&self, f: &Poly) -> Self {
        self.map_coefficients(|c| c * f)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "wedge of elements over different charts");
        let mut out = Self::zero(self.n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if ka.iter().any(|i| kb.contains(i)) {
                    continue;
                }
                let joined: Vec<usize> = ka.iter().chain(kb).copied().collect();
                out.add_term(&joined, ca * cb);
            }
        }
        out
    }

    /// Interior product with a degree-one element of the dual space, given by its
    /// components: removes one slot with the alternating sign of its position.
    pub fn interior(&self, comps: &[Poly]) -> Self {
        assert_eq!(comps.len(), self.n);
        let mut out = Self::zero(self.n);
        for (key, c) in &self.terms {
            for (pos, &i) in key.iter().enumerate() {
                if comps[i].is_zero() {
                    continue;
                }
                let mut rest = key.clone();
                rest.remove(pos);
                let v = &comps[i] * c;
                out.add_term(&rest, if pos % 2 == 1 { -v } else { v });
            }
        }
        out
    }

    /// Rewrites the element in another basis: `images[i]` is basis element `i`
    /// expressed as a degree-one element of the target basis.
    pub fn change_basis(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.n);
        let mut out = Self::zero(self.n);
        for (key, c) in &self.terms {
            let mut acc = Self::scalar(c.clone());
            for &i in key {
                acc = acc.wedge(&images[i]);
            }
            out = out + acc;
        }
        out
    }

    /// Components as a vector when the element has degree one (or is zero).
    pub fn to_vector(&self) -> Result<Vec<Poly>> {
        if self.terms.keys().any(|k| k.len() != 1) {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: format!("{:?}", self.degrees()),
            });
        }
        let mut v = vec![Poly::zero(self.n); self.n];
        for (k, c) in &self.terms {
            v[k[0]] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(comps: &[Poly]) -> Self {
        let n = comps.len();
        let mut out = Self::zero(n);
        for (i, c) in comps.iter().enumerate() {
            out.add_term(&[i], c.clone());
        }
        out
    }

    /// Exact coefficients at a rational point.
    pub fn eval_at(&self, point: &[Rational]) -> Result<BTreeMap<Vec<usize>, Rational>> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = c.eval(point)?;
            if !num_traits::Zero::is_zero(&v) {
                out.insert(k.clone(), v);
            }
        }
        Ok(out)
    }
}

impl<K> Add for Alternating<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.terms {
            self.add_term(&k, v);
        }
        self
    }
}

impl<K> Add<&Alternating<K>> for &Alternating<K> {
    type Output = Alternating<K>;
    fn add(self, rhs: &Alternating<K>) -> Alternating<K> {
        self.clone() + rhs.clone()
    }
}

impl<K> Sub for Alternating<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.terms {
            self.add_term(&k, -v);
        }
        self
    }
}

impl<K> Sub<&Alternating<K>> for &Alternating<K> {
    type Output = Alternating<K>;
    fn sub(self, rhs: &Alternating<K>) -> Alternating<K> {
        self.clone() - rhs.clone()
    }
}

impl<K> Neg for Alternating<K> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coefficients(|c| -c)
    }
}

impl<K> Neg for &Alternating<K> {
    type Output = Alternating<K>;
    fn neg(self) -> Alternating<K> {
        self.map_coefficients(|c| -c)
    }
}
