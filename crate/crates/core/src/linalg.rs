//! Reduced row echelon bases of polynomial spans over GF(p).
//!
//! Columns are monomials, ordered by the ring's term order. Rows are stored
//! sparsely and kept fully reduced: each row is monic and its pivot (leading
//! monomial) occurs in no other row. With that invariant a single pass over
//! the terms of a candidate suffices to reduce it, because subtracting a row
//! never introduces another pivot.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::Result;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

/// Monomial columns of a Macaulay-style matrix, strictly descending.
#[derive(Debug, Clone)]
pub struct ColumnIndex {
    columns: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
}

impl ColumnIndex {
    pub fn new(ring: Ring, mut columns: Vec<Monomial>) -> Self {
        let ord = ring.order();
        columns.sort_by(|a, b| ord.cmp(b, a));
        columns.dedup();
        let position = columns.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        ColumnIndex { columns, position }
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct RowBasis {
    ring: Ring,
    /// Sorted by descending pivot.
    rows: Vec<Polynomial>,
    pivots: HashMap<Monomial, usize>,
    field_mults: u64,
}

impl RowBasis {
    pub fn new(ring: Ring) -> Self {
        RowBasis {
            ring,
            rows: Vec::new(),
            pivots: HashMap::new(),
            field_mults: 0,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    pub fn is_pivot(&self, m: &Monomial) -> bool {
        self.pivots.contains_key(m)
    }

    pub fn pivots(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.rows
            .iter()
            .map(|r| r.leading_monomial().expect("rows are nonzero"))
    }

    pub fn row_with_pivot(&self, m: &Monomial) -> Option<&Polynomial> {
        self.pivots.get(m).map(|&i| &self.rows[i])
    }

    /// Field multiplications spent in reductions so far.
    pub fn field_mults(&self) -> u64 {
        self.field_mults
    }

    fn reduce_counting(&self, f: &Polynomial) -> (Polynomial, u64) {
        let field = self.ring.field();
        let one = self.ring.one();
        let mut out = f.clone();
        let mut mults = 0u64;
        for t in f.terms() {
            if let Some(&i) = self.pivots.get(&t.monomial) {
                let row = &self.rows[i];
                mults += row.len() as u64;
                out = out.add_scaled(field.neg(t.coeff), &one, row);
            }
        }
        (out, mults)
    }

    /// Full reduction of `f` against the rows (the basis is not modified).
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.reduce_counting(f).0
    }

    /// Reduces `f`; a nonzero residual is made monic, inserted, and used to
    /// back-reduce the existing rows. Returns the monic residual (or zero).
    pub fn insert_reduce(&mut self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&f.ring())?;
        let f = f.with_order(self.ring.order());
        let (residual, mults) = self.reduce_counting(&f);
        self.field_mults += mults;
        if residual.is_zero() {
            return Ok(residual);
        }
        let residual = residual.monic();
        self.field_mults += residual.len() as u64;
        let pivot = residual.leading_monomial().expect("nonzero");
        let field = self.ring.field();
        let one = self.ring.one();
        for row in self.rows.iter_mut() {
            let c = row.coeff(&pivot);
            if c != 0 {
                self.field_mults += residual.len() as u64;
                *row = row.add_scaled(field.neg(c), &one, &residual);
            }
        }
        let ord = self.ring.order();
        let pos = self
            .rows
            .partition_point(|r| ord.cmp(&r.leading_monomial().expect("nonzero"), &pivot) == Ordering::Greater);
        self.rows.insert(pos, residual.clone());
        for (i, r) in self.rows.iter().enumerate().skip(pos) {
            self.pivots.insert(r.leading_monomial().expect("nonzero"), i);
        }
        Ok(residual)
    }

    pub fn span_contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        if self.ring.check_same(&f.ring()).is_err() {
            return false;
        }
        let f = f.with_order(self.ring.order());
        // cheap rejection: the leading monomial of any span member is a pivot
        if !self.is_pivot(&f.leading_monomial().expect("nonzero")) {
            return false;
        }
        self.reduce(&f).is_zero()
    }

    pub fn span_dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows whose pivot has degree at most `d`; they span the members of the
    /// span of degree at most `d` because the order is degree-compatible.
    pub fn rows_of_degree_at_most(&self, d: u32) -> impl Iterator<Item = &Polynomial> {
        self.rows.iter().filter(move |r| r.degree().expect("nonzero") <= d)
    }
}

// free-function spellings of the basis operations

pub fn insert_reduce(basis: &mut RowBasis, f: &Polynomial) -> Result<Polynomial> {
    basis.insert_reduce(f)
}

pub fn span_contains(basis: &RowBasis, f: &Polynomial) -> bool {
    basis.span_contains(f)
}

pub fn span_dim(basis: &RowBasis) -> usize {
    basis.span_dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::poly::test_util::*;
    use proptest::prelude::*;

    fn check_reduced(b: &RowBasis) {
        let ord = b.ring().order();
        let pivots: Vec<Monomial> = b.pivots().collect();
        for w in pivots.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        for (i, row) in b.rows().iter().enumerate() {
            assert_eq!(row.lead().unwrap().coeff, 1);
            for (j, p) in pivots.iter().enumerate() {
                if i != j {
                    assert_eq!(row.coeff(p), 0, "pivot {p} appears in row {row}");
                }
            }
        }
    }

    #[test]
    fn first_insertion() {
        let r = ring(2, 101);
        let mut b = RowBasis::new(r);
        let f = poly(r, &[(1, &[2, 0]), (1, &[0, 1])]);
        assert_eq!(b.insert_reduce(&f).unwrap(), f);
        assert_eq!(b.rows(), &[f]);
    }

    #[test]
    fn scalar_multiple_reduces_to_zero() {
        let r = ring(2, 5);
        let mut b = RowBasis::new(r);
        let f = poly(r, &[(1, &[2, 0]), (1, &[0, 1])]);
        b.insert_reduce(&f).unwrap();
        let g = poly(r, &[(2, &[2, 0]), (2, &[0, 1])]);
        assert!(b.insert_reduce(&g).unwrap().is_zero());
        assert_eq!(b.span_dim(), 1);
    }

    #[test]
    fn hand_elimination() {
        let r = ring(2, 101);
        let mut b = RowBasis::new(r);
        b.insert_reduce(&poly(r, &[(1, &[2, 0])])).unwrap();
        b.insert_reduce(&poly(r, &[(1, &[1, 1])])).unwrap();
        let res = b
            .insert_reduce(&poly(r, &[(1, &[2, 0]), (1, &[1, 1]), (1, &[0, 2])]))
            .unwrap();
        assert_eq!(res, poly(r, &[(1, &[0, 2])]));
        assert_eq!(b.span_dim(), 3);
        check_reduced(&b);
    }

    #[test]
    fn back_reduction_keeps_rows_reduced() {
        let r = ring(2, 7);
        let mut b = RowBasis::new(r);
        b.insert_reduce(&poly(r, &[(3, &[2, 0]), (1, &[1, 1]), (2, &[0, 0])]))
            .unwrap();
        b.insert_reduce(&poly(r, &[(1, &[1, 1]), (4, &[0, 1])])).unwrap();
        b.insert_reduce(&poly(r, &[(1, &[0, 1]), (1, &[0, 0])])).unwrap();
        check_reduced(&b);
        // x^2 + 5xy + 3, then xy + 4y, then y + 1 over GF(7)
        assert_eq!(
            b.rows(),
            &[
                poly(r, &[(1, &[2, 0]), (2, &[0, 0])]),
                poly(r, &[(1, &[1, 1]), (3, &[0, 0])]),
                poly(r, &[(1, &[0, 1]), (1, &[0, 0])]),
            ]
        );
    }

    #[test]
    fn span_queries() {
        let r = ring(2, 101);
        let mut b = RowBasis::new(r);
        assert!(b.span_contains(&Polynomial::zero(r)));
        assert_eq!(b.span_dim(), 0);
        b.insert_reduce(&poly(r, &[(1, &[1, 0])])).unwrap();
        b.insert_reduce(&poly(r, &[(1, &[0, 1])])).unwrap();
        assert!(b.span_contains(&poly(r, &[(3, &[1, 0]), (-2, &[0, 1])])));
        assert!(!b.span_contains(&poly(r, &[(1, &[1, 1])])));
        assert!(!b.span_contains(&poly(r, &[(1, &[0, 1]), (1, &[0, 0])])));
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let mut b = RowBasis::new(ring(2, 101));
        let f = poly(ring(3, 101), &[(1, &[1, 0, 0])]);
        assert_eq!(
            b.insert_reduce(&f).unwrap_err(),
            Error::DimensionMismatch { expected: 2, got: 3 }
        );
    }

    fn arb_set() -> impl Strategy<Value = Vec<Polynomial>> {
        let r = ring(2, 7);
        let term = (proptest::collection::vec(0u16..3, 2), -3i64..4);
        proptest::collection::vec(proptest::collection::vec(term, 1..5), 1..7).prop_map(move |ps| {
            ps.into_iter()
                .map(|ts| Polynomial::from_terms(r, ts.into_iter().map(|(e, c)| (Monomial::new(&e).unwrap(), c))))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn invariants_under_insertion(set in arb_set(), coeffs in proptest::collection::vec(0u32..7, 7)) {
            let r = ring(2, 7);
            let mut b = RowBasis::new(r);
            let mut prev = 0;
            for (i, f) in set.iter().enumerate() {
                b.insert_reduce(f).unwrap();
                prop_assert!(b.span_dim() >= prev && b.span_dim() <= i + 1);
                prev = b.span_dim();
            }
            check_reduced(&b);
            for f in &set {
                prop_assert!(b.span_contains(f));
            }
            let mut comb = Polynomial::zero(r);
            for (row, c) in b.rows().iter().zip(&coeffs) {
                prop_assert!(b.span_contains(row));
                comb = comb.add(&row.scale(*c));
            }
            prop_assert!(b.span_contains(&comb));
        }

        #[test]
        fn insertion_order_independence(set in arb_set()) {
            let r = ring(2, 7);
            let mut fwd = RowBasis::new(r);
            let mut bwd = RowBasis::new(r);
            for f in &set {
                fwd.insert_reduce(f).unwrap();
            }
            for f in set.iter().rev() {
                bwd.insert_reduce(f).unwrap();
            }
            prop_assert_eq!(fwd.rows(), bwd.rows());
        }
    }
}
