//! The spaces `V_{F,d}`: the smallest linear spaces containing the members of
//! `F` of degree at most `d` and closed under multiplication by monomials that
//! stays within degree `d`.
//!
//! The closure is computed mutant-style. Every bounded multiple `m * f_i` is
//! inserted first; afterwards each residual of degree below `d` (a mutant, or
//! a seed row that still has room) is multiplied by each variable and the
//! products are inserted in turn. Multiplying by variables is enough: in a
//! reduced echelon basis under a degree-compatible order the members of degree
//! at most `e` are spanned by the residuals of degree at most `e`, so every
//! monomial multiple is reached one variable at a time.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RowBasis;
use crate::monomial::{binomial, enumerate_monomials, DegreeMode, Monomial, TermOrder};
use crate::poly::{leading_term, PolySystem, Polynomial};

pub const DEFAULT_MAX_ROWS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    pub max_rows: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            max_rows: DEFAULT_MAX_ROWS,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureStats {
    /// Calls to `insert_reduce`.
    pub insertions: u64,
    /// Residuals that became rows.
    pub adoptions: u64,
    pub field_mults: u64,
    /// Worklist entries processed after seeding.
    pub passes: u64,
}

/// Where an inserted candidate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// `multiplier * f_i` for the i-th input polynomial.
    Input(usize),
    /// `multiplier * r` for an earlier residual, identified by its log index.
    Residual(usize),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Input(i) => write!(f, "f{i}"),
            Source::Residual(j) => write!(f, "r{j}"),
        }
    }
}

/// One adopted residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogEntry {
    pub degree: u32,
    pub pivot: Monomial,
    pub source: Source,
    pub multiplier: Monomial,
}

#[derive(Debug, Clone)]
pub struct VSpaceBasis {
    d: u32,
    basis: RowBasis,
    log: Vec<LogEntry>,
    stats: ClosureStats,
}

impl VSpaceBasis {
    pub fn degree_bound(&self) -> u32 {
        self.d
    }

    pub fn basis(&self) -> &RowBasis {
        &self.basis
    }

    pub fn rows(&self) -> &[Polynomial] {
        self.basis.rows()
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn stats(&self) -> &ClosureStats {
        &self.stats
    }

    pub fn span_contains(&self, f: &Polynomial) -> bool {
        self.basis.span_contains(f)
    }

    pub fn span_dim(&self) -> usize {
        self.basis.span_dim()
    }

    /// One tab-separated line per adopted residual:
    /// `degree  pivot  source  multiplier`.
    pub fn trace_lines(&self, names: &[String]) -> Vec<String> {
        self.log
            .iter()
            .map(|e| {
                format!(
                    "{}\t{}\t{}\t{}",
                    e.degree,
                    e.pivot.render(names),
                    e.source,
                    e.multiplier.render(names)
                )
            })
            .collect()
    }
}

/// Seeds of the closure: every `m * f_i` with `deg(f_i) <= d` and `deg(m * f_i) <= d`,
/// tagged with the input index and multiplier.
pub fn macaulay_products(system: &PolySystem, d: u32) -> Vec<(usize, Monomial, Polynomial)> {
    let ring = system.ring();
    let mut out = Vec::new();
    for (i, f) in system.polys().iter().enumerate() {
        let deg = f.degree().expect("nonzero");
        if deg > d {
            continue;
        }
        for m in enumerate_monomials(ring.nvars(), d - deg, DegreeMode::AtMost, ring.order())
            .into_iter()
            .rev()
        {
            out.push((i, m, f.mul_monomial(&m)));
        }
    }
    out
}

pub fn macaulay_generators(system: &PolySystem, d: u32) -> Vec<Polynomial> {
    macaulay_products(system, d).into_iter().map(|(_, _, p)| p).collect()
}

pub fn v_space_closure(system: &PolySystem, d: u32) -> Result<VSpaceBasis> {
    v_space_closure_with(system, d, ClosureOptions::default())
}

pub fn v_space_closure_with(system: &PolySystem, d: u32, opts: ClosureOptions) -> Result<VSpaceBasis> {
    if d == 0 {
        return Err(Error::Domain("V-space degree bound must be at least 1".into()));
    }
    let ring = system.ring();
    let ord = ring.order();
    let mut v = VSpaceBasis {
        d,
        basis: RowBasis::new(ring),
        log: Vec::new(),
        stats: ClosureStats::default(),
    };
    let mut residuals: Vec<Polynomial> = Vec::new();
    let mut pending: Vec<usize> = Vec::new();

    let insert = |v: &mut VSpaceBasis,
                  residuals: &mut Vec<Polynomial>,
                  pending: &mut Vec<usize>,
                  f: &Polynomial,
                  source: Source,
                  multiplier: Monomial|
     -> Result<()> {
        v.stats.insertions += 1;
        let r = v.basis.insert_reduce(f)?;
        if r.is_zero() {
            return Ok(());
        }
        let degree = r.degree().expect("nonzero");
        v.log.push(LogEntry {
            degree,
            pivot: r.leading_monomial().expect("nonzero"),
            source,
            multiplier,
        });
        v.stats.adoptions += 1;
        if degree < d {
            pending.push(residuals.len());
        }
        residuals.push(r);
        if v.basis.span_dim() > opts.max_rows {
            v.stats.field_mults = v.basis.field_mults();
            return Err(Error::ClosureCapped {
                max_rows: opts.max_rows,
                stats: v.stats.clone(),
            });
        }
        Ok(())
    };

    for (i, m, p) in macaulay_products(system, d) {
        insert(&mut v, &mut residuals, &mut pending, &p, Source::Input(i), m)?;
    }

    while let Some(pos) = next_pending(&pending, &residuals, ord) {
        let id = pending.swap_remove(pos);
        v.stats.passes += 1;
        let g = residuals[id].clone();
        for i in 0..ring.nvars() {
            let x = ring.var(i);
            insert(
                &mut v,
                &mut residuals,
                &mut pending,
                &g.mul_monomial(&x),
                Source::Residual(id),
                x,
            )?;
        }
    }
    v.stats.field_mults = v.basis.field_mults();
    Ok(v)
}

/// Lowest pending residual: ascending degree, then term order, then age.
fn next_pending(pending: &[usize], residuals: &[Polynomial], ord: TermOrder) -> Option<usize> {
    let key = |id: usize| {
        let r = &residuals[id];
        (r.degree().expect("nonzero"), r.leading_monomial().expect("nonzero"), id)
    };
    (0..pending.len()).min_by(|&a, &b| {
        let (da, ma, ia) = key(pending[a]);
        let (db, mb, ib) = key(pending[b]);
        da.cmp(&db).then_with(|| ord.cmp(&ma, &mb)).then_with(|| ia.cmp(&ib))
    })
}

/// Bound on outer insertions for a closure at degree `d`: `N^2` with `N = C(n+d, n)`.
pub fn insertion_bound(nvars: usize, d: u32) -> u64 {
    let n = binomial(nvars as u64 + d as u64, nvars as u64);
    n * n
}

/// A polynomial `p` in `V_{F,d}` whose top part is a single monomial, with
/// the explicit combination `p = sum c * m * f_i` that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopRep {
    pub key: Monomial,
    pub poly: Polynomial,
    /// `(coefficient, input index, multiplier)`.
    pub combination: Vec<(u32, usize, Monomial)>,
}

#[derive(Debug, Clone)]
pub struct TopRepSet {
    d: u32,
    /// Sorted by descending key.
    reps: Vec<TopRep>,
    index: HashMap<Monomial, usize>,
}

impl TopRepSet {
    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn reps(&self) -> &[TopRep] {
        &self.reps
    }

    pub fn get(&self, m: &Monomial) -> Option<&TopRep> {
        self.index.get(m).map(|&i| &self.reps[i])
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

struct LiftRow {
    lift: Polynomial,
    comb: HashMap<(usize, Monomial), u32>,
}

/// For every monomial of degree `d`, an element of `V_{F,d}` with exactly that top.
///
/// The degree-`d` parts of the products `m * f_i` (which are `m * f_i^top`) are
/// eliminated to the identity, and each elimination step is replayed on the
/// products themselves so the lift stays an explicit combination.
pub fn construct_top_representatives(system: &PolySystem, d: u32) -> Result<TopRepSet> {
    if system.max_degree() > d {
        return Err(Error::Precondition(format!(
            "max input degree {} exceeds the degree of regularity {d}",
            system.max_degree()
        )));
    }
    let ring = system.ring();
    let field = ring.field();
    let ord = ring.order();
    let one = ring.one();
    let mut rows: Vec<LiftRow> = Vec::new();
    let mut pivots: HashMap<Monomial, usize> = HashMap::new();

    for (i, f) in system.polys().iter().enumerate() {
        let deg = f.degree().expect("nonzero");
        for m in enumerate_monomials(ring.nvars(), d - deg, DegreeMode::Exactly, ord)
            .into_iter()
            .rev()
        {
            let mut lift = f.mul_monomial(&m);
            let mut comb = HashMap::from([((i, m), 1u32)]);
            let top_terms: Vec<_> = lift.homogeneous_part(d).terms().to_vec();
            for t in top_terms {
                if let Some(&r) = pivots.get(&t.monomial) {
                    let c = field.neg(t.coeff);
                    lift = lift.add_scaled(c, &one, &rows[r].lift);
                    for (k, v) in &rows[r].comb {
                        let e = comb.entry(*k).or_insert(0);
                        *e = field.add(*e, field.mul(c, *v));
                    }
                }
            }
            comb.retain(|_, v| *v != 0);
            if lift.degree() != Some(d) {
                continue;
            }
            let lead = lift.lead().expect("degree d").to_owned();
            let inv = field.inv(lead.coeff);
            lift = lift.scale(inv);
            comb.values_mut().for_each(|v| *v = field.mul(*v, inv));
            for row in rows.iter_mut() {
                let c = row.lift.coeff(&lead.monomial);
                if c != 0 {
                    let c = field.neg(c);
                    row.lift = row.lift.add_scaled(c, &one, &lift);
                    for (k, v) in &comb {
                        let e = row.comb.entry(*k).or_insert(0);
                        *e = field.add(*e, field.mul(c, *v));
                    }
                    row.comb.retain(|_, v| *v != 0);
                }
            }
            pivots.insert(lead.monomial, rows.len());
            rows.push(LiftRow { lift, comb });
        }
    }

    let expected = binomial(d as u64 + ring.nvars() as u64 - 1, d as u64) as usize;
    if rows.len() != expected {
        return Err(Error::Inconsistent(format!(
            "the degree-{d} tops span {} of {expected} monomials; {d} is not the degree of regularity",
            rows.len()
        )));
    }

    let mut reps: Vec<TopRep> = rows
        .into_iter()
        .map(|row| {
            let key = row.lift.leading_monomial().expect("nonzero");
            let mut combination: Vec<(u32, usize, Monomial)> =
                row.comb.into_iter().map(|((i, m), c)| (c, i, m)).collect();
            combination.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| ord.cmp(&b.2, &a.2)));
            TopRep {
                key,
                poly: row.lift,
                combination,
            }
        })
        .collect();
    reps.sort_by(|a, b| ord.cmp(&b.key, &a.key));
    for rep in &reps {
        if rep.poly.top() != Polynomial::monomial(ring, rep.key) {
            return Err(Error::Inconsistent(format!(
                "representative for {} has top {}",
                rep.key,
                rep.poly.top()
            )));
        }
    }
    let index = reps.iter().enumerate().map(|(i, r)| (r.key, i)).collect();
    Ok(TopRepSet { d, reps, index })
}

/// Cancels the degree-`d` part of `f` with the representatives:
/// `f = remainder + sum coeffs[m] * reps[m]` and `deg(remainder) < d`.
pub fn reduce_against_tops(f: &Polynomial, reps: &TopRepSet) -> Result<(Vec<(Monomial, u32)>, Polynomial)> {
    if f.degree() != Some(reps.d) {
        return Err(Error::Domain(format!(
            "expected a polynomial of degree {}, got degree {:?}",
            reps.d,
            f.degree()
        )));
    }
    let field = f.ring().field();
    let one = f.ring().one();
    let mut coeffs = Vec::new();
    let mut remainder = f.clone();
    for t in f.homogeneous_part(reps.d).terms() {
        let rep = reps
            .get(&t.monomial)
            .ok_or_else(|| Error::Inconsistent(format!("no representative for {}", t.monomial)))?;
        coeffs.push((t.monomial, t.coeff));
        remainder = remainder.add_scaled(field.neg(t.coeff), &one, &rep.poly);
    }
    Ok((coeffs, remainder))
}

/// Repeatedly replaces `f_i` by `f_i - c * m * f_j` whenever `LT(f_j)` divides
/// `LT(f_i)`, until no leading term divides another. Zeros are dropped and
/// surviving polynomials keep their positions.
pub fn interreduce_tops(system: &PolySystem, ord: TermOrder) -> Result<PolySystem> {
    let system = system.with_order(ord);
    let ring = system.ring();
    let field = ring.field();
    let mut polys: Vec<Polynomial> = system.polys().to_vec();
    'outer: loop {
        for i in 0..polys.len() {
            for j in 0..polys.len() {
                if i == j {
                    continue;
                }
                let (li, lj) = (leading_term(&polys[i], ord)?, leading_term(&polys[j], ord)?);
                if let Some(m) = lj.monomial.quotient_of(&li.monomial) {
                    let c = field.neg(field.mul(li.coeff, field.inv(lj.coeff)));
                    let reduced = polys[i].add_scaled(c, &m, &polys[j]);
                    if reduced.is_zero() {
                        polys.remove(i);
                    } else {
                        polys[i] = reduced;
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    if polys.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    PolySystem::new(ring, polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_util::*;
    use crate::poly::Ring;

    fn fk(r: Ring, k: u16) -> PolySystem {
        PolySystem::new(
            r,
            vec![
                poly(r, &[(1, &[k, 0]), (1, &[0, 1])]),
                poly(r, &[(1, &[0, k]), (1, &[1, 0])]),
                poly(r, &[(1, &[1, 1])]),
            ],
        )
        .unwrap()
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn generators_of_f2() {
        let r = ring(2, 101);
        let f2 = fk(r, 2);
        assert_eq!(macaulay_generators(&f2, 2), f2.polys().to_vec());
        assert_eq!(macaulay_generators(&f2, 3).len(), 9);
        let x = PolySystem::new(r, vec![poly(r, &[(1, &[1, 0])])]).unwrap();
        assert_eq!(macaulay_generators(&x, 1), x.polys().to_vec());
        assert!(macaulay_generators(&f2, 1).is_empty());
    }

    #[test]
    fn closure_of_f2() {
        let r = ring(2, 101);
        let f2 = fk(r, 2);
        let v2 = v_space_closure(&f2, 2).unwrap();
        assert_eq!(v2.span_dim(), 3);
        assert!(!v2.span_contains(&poly(r, &[(1, &[1, 0])])));
        assert!(!v2.span_contains(&poly(r, &[(1, &[0, 1])])));
        let v3 = v_space_closure(&f2, 3).unwrap();
        assert!(v3.span_contains(&poly(r, &[(1, &[1, 0])])));
        assert!(v3.span_contains(&poly(r, &[(1, &[0, 1])])));
        assert_eq!(v3.span_dim(), 9);
        assert!(v3.stats().insertions <= insertion_bound(2, 3));
    }

    #[test]
    fn closure_of_squares() {
        let r = ring(2, 101);
        let s = PolySystem::new(r, vec![poly(r, &[(1, &[2, 0])]), poly(r, &[(1, &[0, 2])])]).unwrap();
        let v = v_space_closure(&s, 3).unwrap();
        assert_eq!(v.span_dim(), 6);
        for e in [[2, 0], [0, 2], [3, 0], [2, 1], [1, 2], [0, 3]] {
            assert!(v.span_contains(&poly(r, &[(1, &e)])));
        }
        assert!(!v.span_contains(&poly(r, &[(1, &[1, 1])])));
    }

    #[test]
    fn closure_rejects_degree_zero_and_caps() {
        let r = ring(2, 101);
        let f2 = fk(r, 2);
        assert!(matches!(v_space_closure(&f2, 0), Err(Error::Domain(_))));
        let err = v_space_closure_with(&f2, 3, ClosureOptions { max_rows: 4 }).unwrap_err();
        match err {
            Error::ClosureCapped { max_rows, stats } => {
                assert_eq!(max_rows, 4);
                assert_eq!(stats.adoptions, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trace_format() {
        let r = ring(2, 101);
        let v = v_space_closure(&fk(r, 2), 2).unwrap();
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(
            v.trace_lines(&names),
            vec!["2\tx^2\tf0\t1", "2\ty^2\tf1\t1", "2\tx*y\tf2\t1"]
        );
    }

    #[test]
    fn mutants_are_multiplied() {
        // x^3 + y and x^3 at bound 3 leave the mutant y, whose multiples must be added
        let r = ring(2, 101);
        let s = PolySystem::new(
            r,
            vec![poly(r, &[(1, &[3, 0]), (1, &[0, 1])]), poly(r, &[(1, &[3, 0])])],
        )
        .unwrap();
        let v = v_space_closure(&s, 3).unwrap();
        assert!(v.span_contains(&poly(r, &[(1, &[1, 1])])));
        assert!(v.span_contains(&poly(r, &[(1, &[0, 3])])));
        assert_eq!(v.span_dim(), 1 + 6);
    }

    #[test]
    fn top_reps_of_f2() {
        let r = ring(2, 101);
        let f2 = fk(r, 2);
        let reps = construct_top_representatives(&f2, 2).unwrap();
        assert_eq!(reps.len(), 3);
        assert_eq!(reps.get(&mono(&[1, 1])).unwrap().poly, poly(r, &[(1, &[1, 1])]));
        assert_eq!(
            reps.get(&mono(&[2, 0])).unwrap().poly,
            poly(r, &[(1, &[2, 0]), (1, &[0, 1])])
        );
        assert_eq!(
            reps.get(&mono(&[0, 2])).unwrap().poly,
            poly(r, &[(1, &[0, 2]), (1, &[1, 0])])
        );
        let v = v_space_closure(&f2, 2).unwrap();
        for rep in reps.reps() {
            assert!(v.span_contains(&rep.poly));
            let lift = rep.combination.iter().fold(Polynomial::zero(r), |acc, (c, i, m)| {
                acc.add_scaled(*c, m, &f2.polys()[*i])
            });
            assert_eq!(lift, rep.poly);
        }
    }

    #[test]
    fn top_reps_need_cancellation() {
        // tops x^2 + y^2, x^2 - y^2, xy: each key needs a two-term combination
        let r = ring(2, 101);
        let s = PolySystem::new(
            r,
            vec![
                poly(r, &[(1, &[2, 0]), (1, &[0, 2]), (1, &[1, 0])]),
                poly(r, &[(1, &[2, 0]), (-1, &[0, 2]), (1, &[0, 0])]),
                poly(r, &[(1, &[1, 1])]),
            ],
        )
        .unwrap();
        let reps = construct_top_representatives(&s, 2).unwrap();
        let x2 = reps.get(&mono(&[2, 0])).unwrap();
        assert_eq!(x2.combination.len(), 2);
        // (f0 + f1) / 2 = x^2 + x/2 + 1/2
        assert_eq!(x2.poly, poly(r, &[(1, &[2, 0]), (51, &[1, 0]), (51, &[0, 0])]));
    }

    #[test]
    fn top_reps_preconditions() {
        let r = ring(2, 101);
        let f3 = fk(r, 3);
        assert!(matches!(
            construct_top_representatives(&f3, 2),
            Err(Error::Precondition(_))
        ));
        let xy = PolySystem::new(r, vec![poly(r, &[(1, &[1, 1])])]).unwrap();
        assert!(matches!(
            construct_top_representatives(&xy, 3),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn reduce_against_tops_examples() {
        let r = ring(2, 101);
        let reps = construct_top_representatives(&fk(r, 2), 2).unwrap();
        let (c, rem) = reduce_against_tops(&poly(r, &[(1, &[2, 0]), (1, &[0, 1])]), &reps).unwrap();
        assert_eq!(c, vec![(mono(&[2, 0]), 1)]);
        assert!(rem.is_zero());
        let (c, rem) = reduce_against_tops(&poly(r, &[(1, &[2, 0]), (1, &[0, 2])]), &reps).unwrap();
        assert_eq!(c, vec![(mono(&[2, 0]), 1), (mono(&[0, 2]), 1)]);
        assert_eq!(rem, poly(r, &[(-1, &[1, 0]), (-1, &[0, 1])]));
        let (c, rem) = reduce_against_tops(&poly(r, &[(1, &[1, 1]), (1, &[0, 0])]), &reps).unwrap();
        assert_eq!(c, vec![(mono(&[1, 1]), 1)]);
        assert_eq!(rem, Polynomial::constant(r, 1));
        assert!(matches!(
            reduce_against_tops(&poly(r, &[(1, &[1, 0])]), &reps),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn interreduce_examples() {
        let r = ring(2, 101);
        let x = poly(r, &[(1, &[1, 0])]);
        let s = PolySystem::new(r, vec![x.clone(), poly(r, &[(1, &[2, 0])])]).unwrap();
        assert_eq!(interreduce_tops(&s, TermOrder::Grevlex).unwrap().polys(), &[x]);

        let s = PolySystem::new(
            r,
            vec![poly(r, &[(1, &[2, 0]), (1, &[0, 1])]), poly(r, &[(1, &[2, 0])])],
        )
        .unwrap();
        let out = interreduce_tops(&s, TermOrder::Grevlex).unwrap();
        let mut got = out.polys().to_vec();
        got.sort_by(|a, b| TermOrder::Grevlex.cmp(&b.leading_monomial().unwrap(), &a.leading_monomial().unwrap()));
        assert_eq!(got, vec![poly(r, &[(1, &[2, 0])]), poly(r, &[(1, &[0, 1])])]);

        let f2 = fk(r, 2);
        assert_eq!(interreduce_tops(&f2, TermOrder::Grevlex).unwrap(), f2);
    }

    #[test]
    fn interreduce_to_nothing() {
        let r = ring(2, 101);
        let f = poly(r, &[(1, &[1, 0]), (1, &[0, 0])]);
        let s = PolySystem::new(r, vec![f.clone(), f.scale(3)]).unwrap();
        assert_eq!(interreduce_tops(&s, TermOrder::Grlex).unwrap().len(), 1);
    }
}
