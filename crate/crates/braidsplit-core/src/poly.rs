//! Exact multivariate polynomial arithmetic over the two coefficient rings
//! the quotient computations need: the integers, and the integers mod 2.
//!
//! Symbols stand for undetermined integer exponents of a section ansatz, so
//! in the mod-2 ring every polynomial is reduced to a multilinear one
//! (`n^2 = n mod 2` for every integer `n`). Integers are degree-0 polynomials;
//! there is no separate scalar type.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Interned symbol identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymId(u32);

fn interner() -> &'static Mutex<Vec<String>> {
    static TABLE: OnceLock<Mutex<Vec<String>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Interns `name` and returns its id. Repeated calls with the same name
/// return the same id.
pub fn sym(name: &str) -> SymId {
    let mut table = interner().lock().unwrap();
    if let Some(pos) = table.iter().position(|s| s == name) {
        return SymId(pos as u32);
    }
    table.push(name.to_string());
    SymId(table.len() as u32 - 1)
}

pub fn sym_name(id: SymId) -> String {
    interner().lock().unwrap()[id.0 as usize].clone()
}

/// Coefficient ring tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingMod {
    /// Exact integer coefficients.
    Exact,
    /// Coefficients in Z/2; monomials kept multilinear.
    Mod2,
}

/// Monomial: sorted list of `(symbol, exponent)` with positive exponents.
type Mono = Vec<(SymId, u32)>;

/// A polynomial with integer (or mod-2) coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: RingMod,
    terms: BTreeMap<Mono, i64>,
}

impl Poly {
    pub fn zero(ring: RingMod) -> Self {
        Poly { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: RingMod, value: i64) -> Self {
        let mut p = Poly::zero(ring);
        p.add_term(vec![], value);
        p
    }

    pub fn symbol(ring: RingMod, s: SymId) -> Self {
        let mut p = Poly::zero(ring);
        p.add_term(vec![(s, 1)], 1);
        p
    }

    pub fn ring(&self) -> RingMod {
        self.ring
    }

    fn normalize_coeff(&self, c: i64) -> i64 {
        match self.ring {
            RingMod::Exact => c,
            RingMod::Mod2 => c.rem_euclid(2),
        }
    }

    fn normalize_mono(&self, mut m: Mono) -> Mono {
        if self.ring == RingMod::Mod2 {
            for t in &mut m {
                t.1 = 1;
            }
        }
        m
    }

    fn add_term(&mut self, m: Mono, c: i64) {
        let m = self.normalize_mono(m);
        let c = self.normalize_coeff(c);
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = self.normalize_coeff(
            entry
                .checked_add(c)
                .expect("polynomial coefficient overflow"),
        );
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn constant_value(&self) -> Option<i64> {
        if self.is_zero() {
            Some(0)
        } else if self.is_constant() {
            self.terms.get(&vec![]).copied()
        } else {
            None
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_linear(&self) -> bool {
        self.degree() <= 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.ring, other.ring, "mixed coefficient rings");
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Poly {
        let mut out = Poly::zero(self.ring);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), c.checked_mul(k).expect("coefficient overflow"));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.ring, other.ring, "mixed coefficient rings");
        let mut out = Poly::zero(self.ring);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(
                    mono_mul(ma, mb),
                    ca.checked_mul(cb).expect("coefficient overflow"),
                );
            }
        }
        out
    }

    /// Every symbol occurring in the polynomial.
    pub fn symbols(&self) -> Vec<SymId> {
        let mut out: Vec<SymId> = Vec::new();
        for m in self.terms.keys() {
            for &(s, _) in m {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }

    /// Coefficient of the degree-1 monomial in `s`.
    pub fn linear_coeff(&self, s: SymId) -> i64 {
        self.terms.get(&vec![(s, 1)]).copied().unwrap_or(0)
    }

    /// Substitutes `s := value` and re-normalizes.
    pub fn substitute(&self, s: SymId, value: &Poly) -> Poly {
        assert_eq!(self.ring, value.ring);
        let mut out = Poly::zero(self.ring);
        for (m, &c) in &self.terms {
            let mut rest: Mono = Vec::new();
            let mut power = 0u32;
            for &(t, e) in m {
                if t == s {
                    power = e;
                } else {
                    rest.push((t, e));
                }
            }
            let mut term = Poly::zero(self.ring);
            term.add_term(rest, c);
            for _ in 0..power {
                term = term.mul(value);
            }
            out = out.add(&term);
        }
        out
    }

    /// Reduces the polynomial mod 2, returning a multilinear mod-2 polynomial.
    pub fn to_mod2(&self) -> Poly {
        let mut out = Poly::zero(RingMod::Mod2);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, i64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out: Mono = a.clone();
    for &(s, e) in b {
        match out.iter_mut().find(|t| t.0 == s) {
            Some(t) => t.1 += e,
            None => out.push((s, e)),
        }
    }
    out.sort();
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let c = *c;
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.unsigned_abs();
            if abs != 1 || m.is_empty() {
                write!(f, "{abs}")?;
                if !m.is_empty() {
                    write!(f, "*")?;
                }
            }
            for (j, &(s, e)) in m.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{}", sym_name(s))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let x = Poly::symbol(RingMod::Exact, sym("x"));
        let y = Poly::symbol(RingMod::Exact, sym("y"));
        let p = x.scale(2).add(&y).sub(&Poly::constant(RingMod::Exact, 3));
        assert_eq!(p.to_string(), "-3 + 2*x + y");
        let q = p.mul(&x);
        assert_eq!(q.to_string(), "-3*x + 2*x^2 + x*y");
        assert_eq!(q.degree(), 2);
        assert!(!q.is_linear());
    }

    #[test]
    fn mod2_is_multilinear() {
        let x = Poly::symbol(RingMod::Mod2, sym("x"));
        let sq = x.mul(&x);
        assert_eq!(sq, x);
        let two_x = x.scale(2);
        assert!(two_x.is_zero());
        let c = Poly::constant(RingMod::Mod2, 5);
        assert_eq!(c.constant_value(), Some(1));
    }

    #[test]
    fn substitution() {
        let x = sym("x");
        let y = sym("y");
        let p = Poly::symbol(RingMod::Exact, x).mul(&Poly::symbol(RingMod::Exact, y));
        let sub = p.substitute(x, &Poly::constant(RingMod::Exact, 2));
        assert_eq!(sub, Poly::symbol(RingMod::Exact, y).scale(2));
        let sub2 = p.substitute(x, &Poly::zero(RingMod::Exact));
        assert!(sub2.is_zero());
    }
}
