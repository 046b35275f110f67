//! Sparse multivariate polynomials over GF(p).
//!
//! A [`Polynomial`] keeps its terms sorted strictly descending under the term
//! order of its [`Ring`], with no zero coefficients. The zero polynomial is the
//! empty term list, and its degree is `None` rather than any integer.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{default_names, Monomial, TermOrder, MAX_VARS};

/// Ambient ring `GF(p)[x_1, ..., x_n]` together with the active term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    nvars: usize,
    field: PrimeField,
    order: TermOrder,
}

impl Ring {
    pub fn new(nvars: usize, field: PrimeField, order: TermOrder) -> Result<Self> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        Ok(Ring { nvars, field, order })
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn with_order(&self, order: TermOrder) -> Ring {
        Ring { order, ..*self }
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars)
    }

    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(self.nvars, i)
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.modulus(),
                got: other.field.modulus(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: u32,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: Ring, c: i64) -> Self {
        Self::term(ring, ring.one(), c)
    }

    pub fn term(ring: Ring, monomial: Monomial, c: i64) -> Self {
        let coeff = ring.field.from_i64(c);
        if coeff == 0 {
            return Self::zero(ring);
        }
        Polynomial {
            ring,
            terms: vec![Term { monomial, coeff }],
        }
    }

    pub fn monomial(ring: Ring, monomial: Monomial) -> Self {
        Self::term(ring, monomial, 1)
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// combining repeats and dropping zeros.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let field = ring.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars);
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, field.from_i64(c));
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: Ring, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(monomial, coeff)| Term { monomial, coeff })
            .collect();
        terms.sort_by(|a, b| ring.order.cmp(&b.monomial, &a.monomial));
        Polynomial { ring, terms }
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        // degree-compatible order: the leading monomial has maximal degree
        self.terms.first().map(|t| t.monomial.degree())
    }

    /// Leading term under the ring's own order.
    #[inline]
    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.monomial)
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.find(m).map(|i| self.terms[i].coeff).unwrap_or(0)
    }

    pub(crate) fn find(&self, m: &Monomial) -> Option<usize> {
        let ord = self.ring.order;
        self.terms.binary_search_by(|t| ord.cmp(m, &t.monomial)).ok()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.iter().all(|t| t.monomial.degree() == d),
        }
    }

    /// The homogeneous component of largest degree (`p^top`).
    pub fn top(&self) -> Polynomial {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        let terms = self
            .terms
            .iter()
            .take_while(|t| t.monomial.degree() == d)
            .copied()
            .collect();
        Polynomial { ring: self.ring, terms }
    }

    /// The homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.monomial.degree() == d)
            .copied()
            .collect();
        Polynomial { ring: self.ring, terms }
    }

    /// Re-sorts the terms for another term order.
    pub fn with_order(&self, order: TermOrder) -> Polynomial {
        if order == self.ring.order {
            return self.clone();
        }
        let ring = self.ring.with_order(order);
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Polynomial { ring, terms }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let field = self.ring.field;
        if c == 0 {
            return Self::zero(self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                monomial: t.monomial,
                coeff: field.mul(t.coeff, c),
            })
            .collect();
        Polynomial { ring: self.ring, terms }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            None => self.clone(),
            Some(t) if t.coeff == 1 => self.clone(),
            Some(t) => self.scale(self.ring.field.inv(t.coeff)),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                monomial: t.monomial.mul(m),
                coeff: t.coeff,
            })
            .collect();
        Polynomial { ring: self.ring, terms }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(1, &Monomial::one(self.ring.nvars), other)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(self.ring.field.neg(1), &Monomial::one(self.ring.nvars), other)
    }

    /// `self + c * m * other`, by a single merge of the two sorted term lists.
    pub fn add_scaled(&self, c: u32, m: &Monomial, other: &Polynomial) -> Polynomial {
        let field = self.ring.field;
        let ord = self.ring.order;
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|t| Term {
                monomial: t.monomial.mul(m),
                coeff: field.mul(t.coeff, c),
            })
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match ord.cmp(&x.monomial, &y.monomial) {
                    Ordering::Greater => out.push(*a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = field.add(x.coeff, y.coeff);
                        if s != 0 {
                            out.push(Term {
                                monomial: x.monomial,
                                coeff: s,
                            });
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let field = self.ring.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for s in &self.terms {
            for t in &other.terms {
                let e = acc.entry(s.monomial.mul(&t.monomial)).or_insert(0);
                *e = field.add(*e, field.mul(s.coeff, t.coeff));
            }
        }
        Self::from_map(self.ring, acc)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let field = self.ring.field;
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let c = field.to_signed(t.coeff);
            let (neg, mag) = (c < 0, c.unsigned_abs());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if t.monomial.is_one() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&t.monomial.render(names));
            } else {
                out.push_str(&format!("{}*{}", mag, t.monomial.render(names)));
            }
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.ring.nvars)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.ring.nvars)))
    }
}

/// Homogeneous part of largest degree. Undefined for zero.
pub fn poly_top(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::Domain("top part of the zero polynomial".into()));
    }
    Ok(f.top())
}

/// Maximal term of `f` under `ord`, which need not be the ring's order.
pub fn leading_term(f: &Polynomial, ord: TermOrder) -> Result<Term> {
    if f.is_zero() {
        return Err(Error::Domain("leading term of the zero polynomial".into()));
    }
    if ord == f.ring.order {
        return Ok(f.terms[0]);
    }
    Ok(*f
        .terms
        .iter()
        .max_by(|a, b| ord.cmp(&a.monomial, &b.monomial))
        .expect("nonzero"))
}

/// A non-empty family of nonzero polynomials in one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    ring: Ring,
    polys: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(ring: Ring, polys: Vec<Polynomial>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::Domain(
                "a polynomial system needs at least one polynomial".into(),
            ));
        }
        for f in &polys {
            ring.check_same(&f.ring)?;
            if f.is_zero() {
                return Err(Error::Domain("polynomial systems may not contain zero".into()));
            }
        }
        let polys = polys.into_iter().map(|f| f.with_order(ring.order)).collect();
        Ok(PolySystem { ring, polys })
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn with_order(&self, order: TermOrder) -> PolySystem {
        PolySystem {
            ring: self.ring.with_order(order),
            polys: self.polys.iter().map(|f| f.with_order(order)).collect(),
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys
            .iter()
            .map(|f| f.degree().expect("nonzero by invariant"))
            .collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn tops(&self) -> Vec<Polynomial> {
        self.polys.iter().map(Polynomial::top).collect()
    }
}


#[cfg(test)]
mod tests {
    use super::test_util::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn top_examples() {
        let r = ring(2, 101);
        let k = 4;
        let f = poly(r, &[(1, &[k, 0]), (1, &[0, 1])]);
        assert_eq!(poly_top(&f).unwrap(), poly(r, &[(1, &[k, 0])]));
        let xy = poly(r, &[(1, &[1, 1])]);
        assert_eq!(poly_top(&xy).unwrap(), xy);
        let g = poly(r, &[(1, &[2, 0]), (1, &[1, 1]), (3, &[0, 0])]);
        assert_eq!(poly_top(&g).unwrap(), poly(r, &[(1, &[2, 0]), (1, &[1, 1])]));
        assert!(matches!(poly_top(&Polynomial::zero(r)), Err(Error::Domain(_))));
    }

    #[test]
    fn leading_term_examples() {
        let r = ring(2, 101);
        let lt = |f: &Polynomial| leading_term(f, TermOrder::Grevlex).unwrap().monomial;
        assert_eq!(
            lt(&poly(r, &[(1, &[2, 0]), (1, &[0, 1])])),
            Monomial::new(&[2, 0]).unwrap()
        );
        assert_eq!(
            lt(&poly(r, &[(1, &[0, 1]), (1, &[0, 0])])),
            Monomial::new(&[0, 1]).unwrap()
        );
        assert_eq!(
            lt(&poly(r, &[(1, &[1, 0]), (1, &[0, 1])])),
            Monomial::new(&[1, 0]).unwrap()
        );
        assert!(leading_term(&Polynomial::zero(r), TermOrder::Grlex).is_err());
    }

    #[test]
    fn leading_term_under_foreign_order() {
        let r = ring(3, 101);
        let f = poly(r, &[(1, &[1, 0, 2]), (1, &[0, 2, 1])]);
        assert_eq!(
            leading_term(&f, TermOrder::Grlex).unwrap().monomial,
            Monomial::new(&[1, 0, 2]).unwrap()
        );
        assert_eq!(
            leading_term(&f, TermOrder::Grevlex).unwrap().monomial,
            Monomial::new(&[0, 2, 1]).unwrap()
        );
    }

    #[test]
    fn rendering() {
        let r = ring(2, 101);
        let f = poly(r, &[(1, &[2, 0]), (-1, &[0, 1]), (3, &[0, 0])]);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(f.render(&names), "x^2 - y + 3");
        assert_eq!(Polynomial::zero(r).render(&names), "0");
        assert_eq!(poly(r, &[(-2, &[1, 1])]).render(&names), "-2*x*y");
    }

    #[test]
    fn system_rejects_zero_and_empty() {
        let r = ring(2, 7);
        assert!(PolySystem::new(r, vec![]).is_err());
        assert!(PolySystem::new(r, vec![Polynomial::zero(r)]).is_err());
        let other = ring(3, 7);
        let e = PolySystem::new(r, vec![Polynomial::constant(other, 1)]).unwrap_err();
        assert_eq!(e, Error::DimensionMismatch { expected: 2, got: 3 });
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = Polynomial> {
        let r = ring(3, p);
        proptest::collection::vec((proptest::collection::vec(0u16..4, 3), -50i64..50), 0..8)
            .prop_map(move |ts| Polynomial::from_terms(r, ts.into_iter().map(|(e, c)| (Monomial::new(&e).unwrap(), c))))
    }

    proptest! {
        #[test]
        fn top_is_homogeneous_and_rest_is_lower(f in arb_poly(101)) {
            prop_assume!(!f.is_zero());
            let t = poly_top(&f).unwrap();
            prop_assert!(t.is_homogeneous());
            prop_assert_eq!(t.degree(), f.degree());
            let rest = f.sub(&t);
            prop_assert!(rest.degree().is_none_or(|d| d < f.degree().unwrap()));
        }

        #[test]
        fn ring_laws(f in arb_poly(7), g in arb_poly(7), h in arb_poly(7)) {
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.sub(&f), Polynomial::zero(f.ring()));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.with_order(TermOrder::Grlex).with_order(TermOrder::Grevlex), f.clone());
            prop_assert!(f.terms().windows(2).all(|w| TermOrder::Grevlex.cmp(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        }
    }
}
