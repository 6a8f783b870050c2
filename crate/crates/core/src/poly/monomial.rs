use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Dense index of a ring variable. Smaller indices are greater variables.
pub type VarIndex = u16;

/// A monomial as a sparse list of `(variable, exponent)` pairs, sorted by
/// ascending variable index, exponents strictly positive.
///
/// `Ord` is the lexicographic order in which a smaller variable index is a
/// greater variable: `p_{1,1} > p_{1,2} > ... > p_{2,1} > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: SmallVec<[(VarIndex, u16); 6]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarIndex) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarIndex, e: u16) -> Self {
        let mut m = Monomial::default();
        if e > 0 {
            m.factors.push((v, e));
        }
        m
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging
    /// repeated variables and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (VarIndex, u16)>>(pairs: I) -> Self {
        let mut factors: SmallVec<[(VarIndex, u16); 6]> = pairs.into_iter().collect();
        factors.sort_unstable_by_key(|&(v, _)| v);
        let mut out: SmallVec<[(VarIndex, u16); 6]> = SmallVec::new();
        for (v, e) in factors {
            match out.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|&mut (_, e)| e > 0);
        Monomial { factors: out }
    }

    /// Product of the given variables, each with exponent one (repeats add up).
    pub fn from_vars<I: IntoIterator<Item = VarIndex>>(vars: I) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn exponent(&self, v: VarIndex) -> u16 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(VarIndex, u16)] {
        &self.factors
    }

    pub fn support(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn max_var(&self) -> Option<VarIndex> {
        self.factors.last().map(|&(v, _)| v)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Bit mask of the variables present (variable index modulo 64), used as
    /// a cheap necessary condition for divisibility.
    pub fn divmask(&self) -> u64 {
        self.factors
            .iter()
            .fold(0u64, |acc, &(v, _)| acc | (1u64 << (v % 64)))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let mut it = other.factors.iter();
        'outer: for &(v, e) in &self.factors {
            for &(w, f) in it.by_ref() {
                match w.cmp(&v) {
                    Ordering::Less => continue,
                    Ordering::Equal if f >= e => continue 'outer,
                    _ => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    fn merge_with(&self, other: &Monomial, f: impl Fn(u16, u16) -> u16) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out: SmallVec<[(VarIndex, u16); 6]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, e) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, f(a[i - 1].1, 0))
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, f(0, b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, f(a[i - 1].1, b[j - 1].1))
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial { factors: out }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        self.merge_with(other, |x, y| x + y)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, |x, y| x.max(y))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, |x, y| x.min(y))
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(self.merge_with(other, |x, y| x - y))
    }

    /// Rewrites every variable index through `f`; `f` must be strictly
    /// increasing on the support so that the factor list stays sorted.
    pub fn map_vars(&self, f: impl Fn(VarIndex) -> VarIndex) -> Monomial {
        Monomial {
            factors: self.factors.iter().map(|&(v, e)| (f(v), e)).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (&(v, e), &(w, f)) in self.factors.iter().zip(other.factors.iter()) {
            if v != w {
                // The monomial containing the smaller index has the greater
                // variable where the other has exponent zero.
                return w.cmp(&v);
            }
            if e != f {
                return e.cmp(&f);
            }
        }
        self.factors.len().cmp(&other.factors.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Reference lex comparison over dense exponent vectors.
    fn dense_cmp(a: &Monomial, b: &Monomial, nvars: u16) -> Ordering {
        for v in 0..nvars {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec((0u16..12, 0u16..3), 0..6).prop_map(Monomial::from_pairs)
    }

    #[test]
    fn basic_ops() {
        let a = Monomial::from_pairs([(0, 1), (3, 2)]);
        let b = Monomial::from_pairs([(3, 1), (5, 1)]);
        assert_eq!(a.mul(&b), Monomial::from_pairs([(0, 1), (3, 3), (5, 1)]));
        assert_eq!(a.lcm(&b), Monomial::from_pairs([(0, 1), (3, 2), (5, 1)]));
        assert_eq!(a.gcd(&b), Monomial::var(3));
        assert!(Monomial::var(3).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(a.div(&Monomial::var(0)), Some(Monomial::var_pow(3, 2)));
        assert_eq!(a.div(&b), None);
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(1).is_coprime(&a));
        assert_eq!(a.degree(), 3);
        assert!(!a.is_squarefree());
        assert!(Monomial::one().divides(&a));
    }

    proptest! {
        #[test]
        fn lex_matches_dense(a in arb_monomial(), b in arb_monomial()) {
            prop_assert_eq!(a.cmp(&b), dense_cmp(&a, &b, 12));
        }

        #[test]
        fn order_is_multiplicative(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
            prop_assert!(Monomial::one() <= a);
        }

        #[test]
        fn divides_matches_exponents(a in arb_monomial(), b in arb_monomial()) {
            let expected = (0..12).all(|v| a.exponent(v) <= b.exponent(v));
            prop_assert_eq!(a.divides(&b), expected);
            if expected {
                prop_assert_eq!(b.div(&a).unwrap().mul(&a), b.clone());
                prop_assert!(a.divmask() & !b.divmask() == 0);
            }
        }
    }
}
