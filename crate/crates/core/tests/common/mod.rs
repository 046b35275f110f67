//! Dense reference implementations and instance sets shared by the
//! integration tests. Nothing here uses the library's elimination code.
#![allow(dead_code)]

use std::collections::HashMap;

use sdreg::harness::generators::{gen_fk, gen_random, RandomSpec};
use sdreg::monomial::{enumerate_monomials, DegreeMode};
use sdreg::{Monomial, PolySystem, Polynomial, TermOrder};

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form of dense rows over GF(p); zero rows dropped,
/// rows ordered by pivot column.
pub fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Coordinates with respect to all monomials of degree at most `d`, largest first.
pub struct Dense {
    pub cols: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    pub p: u64,
}

impl Dense {
    pub fn new(system: &PolySystem, d: u32) -> Self {
        let ring = system.ring();
        let cols = enumerate_monomials(ring.nvars(), d, DegreeMode::AtMost, ring.order());
        let index = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Dense {
            cols,
            index,
            p: ring.field().modulus() as u64,
        }
    }

    pub fn vector(&self, f: &Polynomial) -> Option<Vec<u64>> {
        let mut v = vec![0; self.cols.len()];
        for t in f.terms() {
            v[*self.index.get(&t.monomial)?] = t.coeff as u64;
        }
        Some(v)
    }

    pub fn degree(&self, v: &[u64]) -> Option<u32> {
        v.iter()
            .zip(&self.cols)
            .filter(|(c, _)| **c != 0)
            .map(|(_, m)| m.degree())
            .max()
    }

    /// `m * v`, or `None` if some product leaves the column set.
    pub fn shift(&self, v: &[u64], m: &Monomial) -> Option<Vec<u64>> {
        let mut out = vec![0; self.cols.len()];
        for (c, col) in v.iter().zip(&self.cols) {
            if *c != 0 {
                out[*self.index.get(&col.mul(m))?] = *c;
            }
        }
        Some(out)
    }

    pub fn rank(&self, rows: Vec<Vec<u64>>) -> usize {
        rref(rows, self.p).len()
    }

    pub fn contains(&self, basis: &[Vec<u64>], v: &[u64]) -> bool {
        let mut rows = basis.to_vec();
        rows.push(v.to_vec());
        self.rank(rows) == basis.len()
    }
}

/// Fixed point of "add every monomial multiple that stays within degree `d`,
/// re-reduce" started from the inputs of degree at most `d`.
pub fn closure_oracle(system: &PolySystem, d: u32) -> (Dense, Vec<Vec<u64>>) {
    let dense = Dense::new(system, d);
    let n = system.ring().nvars();
    let seeds: Vec<Vec<u64>> = system.polys().iter().filter_map(|f| dense.vector(f)).collect();
    let mut rows = rref(seeds, dense.p);
    let multipliers = enumerate_monomials(n, d, DegreeMode::AtMost, system.ring().order());
    loop {
        let mut next = rows.clone();
        for r in &rows {
            for m in &multipliers {
                if let Some(v) = dense.shift(r, m) {
                    next.push(v);
                }
            }
        }
        let next = rref(next, dense.p);
        if next.len() == rows.len() {
            return (dense, rows);
        }
        rows = next;
    }
}

/// `dim (F)_{<=e}` as the rank of all bounded multiples of a Gröbner basis.
pub fn ideal_dim_oracle(system: &PolySystem, gb: &[Polynomial], e: u32) -> usize {
    let dense = Dense::new(system, e);
    let multipliers = enumerate_monomials(system.ring().nvars(), e, DegreeMode::AtMost, system.ring().order());
    let mut rows = Vec::new();
    for g in gb {
        for m in &multipliers {
            if let Some(v) = dense.vector(&g.mul_monomial(m)) {
                rows.push(v);
            }
        }
    }
    dense.rank(rows)
}

pub struct Instance {
    pub label: String,
    pub system: PolySystem,
    pub order: TermOrder,
}

pub fn fk_instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for k in 2..=6 {
        for order in TermOrder::ALL {
            out.push(Instance {
                label: format!("F_{k} {order}"),
                system: gen_fk(k, 101).unwrap().with_order(order),
                order,
            });
        }
    }
    out
}

const PRIMES: [u64; 3] = [2, 3, 101];

/// Random specs cycling through n in {2, 3}, k in {n, n+1, n+2}, p in {2, 3, 101},
/// per-polynomial degree bounds in {2, 3} and both orders.
pub fn random_spec(i: u64, require_hypothesis: bool) -> RandomSpec {
    let n = 2 + (i % 2) as usize;
    let k = n + ((i / 2) % 3) as usize;
    let p = PRIMES[((i / 6) % 3) as usize];
    let degrees = (0..k as u64).map(|j| 2 + ((i / 18 + j) % 2) as u32).collect();
    let order = TermOrder::ALL[((i / 36) % 2) as usize];
    RandomSpec {
        seed: 0x5eed_0000 + i,
        nvars: n,
        degrees,
        density: if n == 2 { 0.6 } else { 0.4 },
        p,
        order,
        require_hypothesis,
        max_retries: 500,
    }
}

pub fn random_instances(range: std::ops::Range<u64>, require_hypothesis: bool) -> Vec<Instance> {
    range
        .filter_map(|i| {
            let spec = random_spec(i, require_hypothesis);
            let system = gen_random(&spec).ok()?;
            Some(Instance {
                label: format!(
                    "random #{i} n={} k={} p={} {}",
                    spec.nvars,
                    spec.degrees.len(),
                    spec.p,
                    spec.order
                ),
                system,
                order: spec.order,
            })
        })
        .collect()
}
