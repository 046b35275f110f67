//! Ground truth: Buchberger's algorithm with full reduction, plus the
//! linear-algebra (B/M mutant loop) route to the same reduced basis.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{default_dreg_cap, degree_of_regularity, Dreg};
use crate::linalg::RowBasis;
use crate::monomial::{binomial, enumerate_monomials, DegreeMode, Monomial, TermOrder};
use crate::poly::{PolySystem, Polynomial, Ring};

pub const DEFAULT_MAX_BASIS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    polys: Vec<Polynomial>,
    order: TermOrder,
    reduced: bool,
}

impl GroebnerBasis {
    /// Sorted by descending leading monomial.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].degree() == Some(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero"))
            .collect()
    }
}

/// Remainder of multivariate division of `f` by the elements of `divisors`.
pub fn reduce_by(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = f.ring();
    let field = ring.field();
    let leads: Vec<(Monomial, u32)> = divisors
        .iter()
        .map(|g| {
            let t = g.lead().expect("nonzero divisor");
            (t.monomial, field.inv(t.coeff))
        })
        .collect();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, i64)> = Vec::new();
    while let Some(lt) = p.lead().copied() {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (lm, inv))| lm.quotient_of(&lt.monomial).map(|q| (i, q, *inv)));
        match hit {
            Some((i, q, inv)) => {
                let c = field.neg(field.mul(lt.coeff, inv));
                p = p.add_scaled(c, &q, &divisors[i]);
            }
            None => {
                rem.push((lt.monomial, lt.coeff as i64));
                p = p.add_scaled(
                    field.neg(lt.coeff),
                    &ring.one(),
                    &Polynomial::monomial(ring, lt.monomial),
                );
            }
        }
    }
    Polynomial::from_terms(ring, rem)
}

pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Polynomial {
    reduce_by(&f.with_order(g.order), &g.polys)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.ring().field();
    let (lf, lg) = (f.lead().expect("nonzero"), g.lead().expect("nonzero"));
    let l = lf.monomial.lcm(&lg.monomial);
    let mf = lf.monomial.quotient_of(&l).expect("lcm");
    let mg = lg.monomial.quotient_of(&l).expect("lcm");
    let a = f.mul_monomial(&mf).scale(field.inv(lf.coeff));
    a.add_scaled(field.neg(field.inv(lg.coeff)), &mg, g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuchbergerOptions {
    pub max_basis: usize,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions {
            max_basis: DEFAULT_MAX_BASIS,
        }
    }
}

pub fn buchberger_reduced(system: &PolySystem, ord: TermOrder) -> Result<GroebnerBasis> {
    buchberger_reduced_with(system, ord, BuchbergerOptions::default())
}

/// Buchberger with the product criterion and the normal selection strategy
/// (lowest lcm degree first, ties broken by term order and then by age).
pub fn buchberger_reduced_with(system: &PolySystem, ord: TermOrder, opts: BuchbergerOptions) -> Result<GroebnerBasis> {
    let system = system.with_order(ord);
    let ring = system.ring();
    let mut basis: Vec<Polynomial> = Vec::new();
    for f in system.polys() {
        let r = reduce_by(f, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() && !basis.iter().any(|g| g.degree() == Some(0)) {
        let lcm_of = |&(i, j): &(usize, usize)| {
            basis[i]
                .leading_monomial()
                .expect("nonzero")
                .lcm(&basis[j].leading_monomial().expect("nonzero"))
        };
        let pos = (0..pairs.len())
            .min_by(|&a, &b| {
                let (la, lb) = (lcm_of(&pairs[a]), lcm_of(&pairs[b]));
                ord.cmp(&la, &lb).then_with(|| pairs[a].cmp(&pairs[b]))
            })
            .expect("non-empty");
        let (i, j) = pairs.swap_remove(pos);
        let (li, lj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if li.is_coprime(&lj) {
            continue;
        }
        let r = reduce_by(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if basis.len() >= opts.max_basis {
            return Err(Error::BuchbergerCapped { limit: opts.max_basis });
        }
        let k = basis.len();
        basis.push(r.monic());
        pairs.extend((0..k).map(|i| (i, k)));
    }
    let g = finish_reduced(ring, basis);
    verify_buchberger_criterion(&g)?;
    Ok(g)
}

/// Minimalizes, tail-reduces, makes monic and sorts a Gröbner basis.
fn finish_reduced(ring: Ring, basis: Vec<Polynomial>) -> GroebnerBasis {
    let ord = ring.order();
    if basis.iter().any(|g| g.degree() == Some(0)) {
        return GroebnerBasis {
            polys: vec![Polynomial::constant(ring, 1)],
            order: ord,
            reduced: true,
        };
    }
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_monomial().expect("nonzero");
            j != i && lh.divides(&lm) && (lh != lm || j < i)
        });
        if !redundant {
            minimal.push(g.monic());
        }
    }
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let lead = Polynomial::monomial(ring, minimal[i].leading_monomial().expect("nonzero"));
        let tail = minimal[i].sub(&lead);
        minimal[i] = lead.add(&reduce_by(&tail, &others));
    }
    minimal.sort_by(|a, b| ord.cmp(&b.leading_monomial().unwrap(), &a.leading_monomial().unwrap()));
    GroebnerBasis {
        polys: minimal,
        order: ord,
        reduced: true,
    }
}

/// Every S-polynomial of the basis must reduce to zero.
pub fn verify_buchberger_criterion(g: &GroebnerBasis) -> Result<()> {
    for j in 0..g.polys.len() {
        for i in 0..j {
            let s = s_polynomial(&g.polys[i], &g.polys[j]);
            if !reduce_by(&s, &g.polys).is_zero() {
                return Err(Error::Inconsistent(format!(
                    "S-polynomial of {} and {} does not reduce to zero",
                    g.polys[i], g.polys[j]
                )));
            }
        }
    }
    Ok(())
}

/// Maximum degree of the reduced Gröbner basis.
pub fn gbd(system: &PolySystem, ord: TermOrder) -> Result<u32> {
    Ok(buchberger_reduced(system, ord)?.max_degree())
}

/// Number of monomials of degree at most `e` lying in the leading-term ideal,
/// i.e. the dimension of the ideal elements of degree at most `e`.
pub fn ideal_dim_le(g: &GroebnerBasis, e: u32) -> usize {
    let Some(first) = g.polys.first() else {
        return 0;
    };
    let leads = g.leading_monomials();
    enumerate_monomials(first.ring().nvars(), e, DegreeMode::AtMost, g.order)
        .into_iter()
        .filter(|m| leads.iter().any(|l| l.divides(m)))
        .count()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutantStats {
    /// Degree bound `d_reg + 1` the loop ran at.
    pub bound: u32,
    /// Number of monomials of degree at most `bound`.
    pub columns: u64,
    /// Elements taken from M.
    pub steps: u64,
    /// Elements added to B, including the initial echelon rows.
    pub adoptions: u64,
    pub field_mults: u64,
    /// Largest size M reached.
    pub max_queue: usize,
}

impl MutantStats {
    pub fn step_bound(&self) -> u64 {
        self.columns * self.columns
    }
}

/// Reduced Gröbner basis from a basis of `V_{F, d_reg + 1}` built by the B/M loop.
///
/// B starts as the echelon form of F; M holds every bounded multiple `m * b`
/// (`deg m >= 1`) of each adopted element. Each step reduces one element of M
/// against B and adopts the residual when its leading monomial is new. The
/// loop stops when B has one row per column or M is empty.
pub fn mutantxl_gb(system: &PolySystem, ord: TermOrder) -> Result<(GroebnerBasis, MutantStats)> {
    let system = system.with_order(ord);
    let ring = system.ring();
    let d = match degree_of_regularity(&system, default_dreg_cap(&system)) {
        Dreg::Finite(d) if system.max_degree() <= d => d,
        Dreg::Finite(d) => {
            return Err(Error::Precondition(format!(
                "max input degree {} exceeds d_reg = {d}; apply interreduce_tops first",
                system.max_degree()
            )))
        }
        Dreg::Infinite { cap } => {
            return Err(Error::Precondition(format!(
                "degree of regularity is infinite (checked up to {cap}); apply interreduce_tops first or supply a zero-dimensional system"
            )))
        }
    };
    let bound = d + 1;
    let columns = binomial(ring.nvars() as u64 + bound as u64, ring.nvars() as u64);
    let mut stats = MutantStats {
        bound,
        columns,
        ..MutantStats::default()
    };
    let mut b = RowBasis::new(ring);
    let mut queue: VecDeque<(usize, Monomial)> = VecDeque::new();
    let mut seen: HashSet<(usize, Monomial)> = HashSet::new();
    let mut adopted: Vec<Polynomial> = Vec::new();

    let mut adopt = |r: Polynomial, adopted: &mut Vec<Polynomial>, queue: &mut VecDeque<(usize, Monomial)>| {
        let id = adopted.len();
        let deg = r.degree().expect("nonzero");
        if deg < bound {
            for m in enumerate_monomials(ring.nvars(), bound - deg, DegreeMode::AtMost, ord)
                .into_iter()
                .rev()
            {
                if !m.is_one() && seen.insert((id, m)) {
                    queue.push_back((id, m));
                }
            }
        }
        adopted.push(r);
    };

    for f in system.polys() {
        let r = b.insert_reduce(f)?;
        if !r.is_zero() {
            stats.adoptions += 1;
            adopt(r, &mut adopted, &mut queue);
        }
    }
    stats.max_queue = queue.len();
    while (b.span_dim() as u64) < columns {
        let Some((id, m)) = queue.pop_front() else {
            break;
        };
        stats.steps += 1;
        let candidate = adopted[id].mul_monomial(&m);
        let r = b.insert_reduce(&candidate)?;
        if !r.is_zero() {
            stats.adoptions += 1;
            adopt(r, &mut adopted, &mut queue);
            stats.max_queue = stats.max_queue.max(queue.len());
        }
    }
    stats.field_mults = b.field_mults();

    let gb = extract_reduced_basis(&b);
    Ok((gb, stats))
}

/// Rows whose leading monomials minimally generate the pivot ideal,
/// tail-reduced and monic.
pub fn extract_reduced_basis(b: &RowBasis) -> GroebnerBasis {
    let ring = b.ring();
    let pivots: Vec<Monomial> = b.pivots().collect();
    let selected: Vec<Polynomial> = b
        .rows()
        .iter()
        .zip(&pivots)
        .filter(|(_, p)| !pivots.iter().any(|q| q != *p && q.divides(p)))
        .map(|(r, _)| r.clone())
        .collect();
    finish_reduced(ring, selected)
}

/// Sorts polynomials by descending leading monomial, for element-wise comparison.
pub fn canonical_sort(polys: &mut [Polynomial], ord: TermOrder) {
    polys.sort_by(|a, b| match (a.leading_monomial(), b.leading_monomial()) {
        (Some(x), Some(y)) => ord.cmp(&y, &x),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
    });
}
