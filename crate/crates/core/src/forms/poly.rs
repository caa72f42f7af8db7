use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{self, Q};

/// Exponent vector, one entry per chart coordinate.
pub type Exponents = Vec<u32>;

/// A polynomial with rational coefficients in `nvars` variables.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyScalar {
    nvars: usize,
    terms: BTreeMap<Exponents, Q>,
}

impl PolyScalar {
    pub fn zero(nvars: usize) -> Self {
        PolyScalar { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exponents: Exponents, c: Q) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length must equal the variable count");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Adds `c * x^e` in place.
    pub fn add_term(&mut self, e: Exponents, c: Q) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        PolyScalar { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * rational::int(e[i] as i64));
        }
        out
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let powers = power_table(point, self);
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating point value; used by numerical flows.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = rational::to_f64(c);
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        t *= point[i].powi(k as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Substitutes `subs[i]` for variable `i`. All substitutes must share one variable count.
    pub fn compose(&self, subs: &[PolyScalar]) -> PolyScalar {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable is required");
        let target_vars = subs.first().map_or(0, PolyScalar::nvars);
        let mut cache: Vec<Vec<PolyScalar>> = subs.iter().map(|s| vec![PolyScalar::one(s.nvars)]).collect();
        let mut out = PolyScalar::zero(target_vars);
        for (e, c) in &self.terms {
            let mut t = PolyScalar::constant(target_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap() * &subs[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Sets the listed variables to zero.
    pub fn set_zero(&self, vars: &[usize]) -> PolyScalar {
        PolyScalar {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().all(|&v| e[v] == 0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True iff every monomial is divisible by at least one of `vars`,
    /// i.e. the polynomial lies in the ideal they generate.
    pub fn in_ideal(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|e| vars.iter().any(|&v| e[v] > 0))
    }

    /// True iff every monomial has total degree at least `order` in `vars`.
    pub fn vanishes_to_order(&self, vars: &[usize], order: u32) -> bool {
        self.terms.keys().all(|e| vars.iter().map(|&v| e[v]).sum::<u32>() >= order)
    }

    /// Re-embeds into `new_nvars` variables, sending variable `i` to `map[i]`.
    pub fn reindex(&self, map: &[usize], new_nvars: usize) -> PolyScalar {
        assert_eq!(map.len(), self.nvars);
        let mut out = PolyScalar::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Drops variables, keeping only those in `keep` (in order). Fails if a dropped
    /// variable occurs.
    pub fn restrict_vars(&self, keep: &[usize]) -> Option<PolyScalar> {
        let mut out = PolyScalar::zero(keep.len());
        for (e, c) in &self.terms {
            let dropped: u32 = e.iter().enumerate().filter(|(i, _)| !keep.contains(i)).map(|(_, &k)| k).sum();
            if dropped > 0 {
                return None;
            }
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        Some(out)
    }

    /// True iff some monomial involves variable `v`.
    pub fn depends_on(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }
}

fn power_table(point: &[Q], p: &PolyScalar) -> Vec<Vec<Q>> {
    (0..p.nvars)
        .map(|i| {
            let d = p.degree_in(i) as usize;
            let mut v = Vec::with_capacity(d + 1);
            v.push(Q::one());
            for k in 1..=d {
                let next = &v[k - 1] * &point[i];
                v.push(next);
            }
            v
        })
        .collect()
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = PolyScalar::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for PolyScalar {
            type Output = PolyScalar;
            fn $m(self, rhs: PolyScalar) -> PolyScalar { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        -&self
    }
}
