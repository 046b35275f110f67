//! Monomials as fixed-length exponent vectors and the degree-compatible term
//! orders that rank them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 16;

/// A monic monomial `x_1^{e_1} ... x_n^{e_n}`. Unused slots past `n` are zero,
/// so derived equality and hashing agree with the mathematical ones.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    degree: u16,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            degree: 0,
        }
    }

    pub fn new(exps: &[u16]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::one(exps.len());
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().sum();
        Ok(m)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] += other.exps[i];
        }
        out.degree += other.degree;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && (0..self.nvars()).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for i in 0..self.nvars() {
            out.exps[i] -= self.exps[i];
        }
        out.degree -= self.degree;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] = self.exps[i].max(other.exps[i]);
        }
        out.degree = out.exps.iter().sum();
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Renders with the given variable names, `1` for the unit monomial.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.nvars())))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.nvars())))
    }
}

/// Degree-compatible term orders with precedence `x_1 > x_2 > ... > x_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    #[default]
    Grevlex,
    Grlex,
}

impl TermOrder {
    pub const ALL: [TermOrder; 2] = [TermOrder::Grevlex, TermOrder::Grlex];

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree.cmp(&b.degree) {
            Ordering::Equal => {}
            other => return other,
        }
        let n = a.nvars();
        match self {
            TermOrder::Grlex => {
                for i in 0..n {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => {}
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            TermOrder::Grevlex => {
                for i in (0..n).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => {}
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::Grevlex => "grevlex",
            TermOrder::Grlex => "grlex",
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "grevlex" | "degrevlex" | "drl" => Ok(TermOrder::Grevlex),
            "grlex" | "deglex" => Ok(TermOrder::Grlex),
            other => Err(Error::UnsupportedOrder(other.to_string())),
        }
    }
}

/// Checked comparison: both monomials must live in the same ring.
pub fn order_compare(a: &Monomial, b: &Monomial, ord: TermOrder) -> Result<Ordering> {
    if a.nvars != b.nvars {
        return Err(Error::DimensionMismatch {
            expected: a.nvars(),
            got: b.nvars(),
        });
    }
    Ok(ord.cmp(a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    Exactly,
    AtMost,
}

/// All monomials of degree exactly (or at most) `degree`, sorted descending under `ord`.
pub fn enumerate_monomials(nvars: usize, degree: u32, mode: DegreeMode, ord: TermOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let degrees = match mode {
        DegreeMode::Exactly => degree..=degree,
        DegreeMode::AtMost => 0..=degree,
    };
    let mut exps = vec![0u16; nvars];
    for d in degrees {
        fill_exponents(&mut exps, 0, d as u16, &mut out);
    }
    out.sort_by(|a, b| ord.cmp(b, a));
    out
}

fn fill_exponents(exps: &mut [u16], pos: usize, remaining: u16, out: &mut Vec<Monomial>) {
    if exps.is_empty() {
        if remaining == 0 {
            out.push(Monomial::one(0));
        }
        return;
    }
    if pos == exps.len() - 1 {
        exps[pos] = remaining;
        out.push(Monomial::new(exps).expect("nvars checked by caller"));
        exps[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e;
        fill_exponents(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

/// Binomial coefficient; exact for the small arguments used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
