//! Fraction-free column reduction of sparse integer vectors.
//!
//! Each stored column has a distinct pivot, its smallest row index. A new
//! vector `x` with leading entry `b` at a stored pivot, whose column `u` has
//! leading entry `a`, is replaced by `(a/g) x - (b/g) u` with `g = gcd(a, b)`,
//! and then divided by the gcd of its entries. Vectors may carry a second
//! "track" part recording which original vectors they combine; the same
//! operations apply to it.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Integer entry types. `i64` arithmetic is checked and reports overflow as
/// `None`; `BigInt` never overflows.
pub trait Entry: Clone + Debug + PartialEq + Send + Sync {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Entry for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Option<Self> {
        // i64::MIN has no positive counterpart.
        if *self == i64::MIN || *o == i64::MIN {
            return None;
        }
        Some(Integer::gcd(self, o))
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Entry for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Option<Self> {
        Some(Integer::gcd(self, o))
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type Sparse<T> = Vec<(u32, T)>;

/// A vector with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct Aug<T> {
    pub main: Sparse<T>,
    pub track: Sparse<T>,
}

impl<T: Entry> Aug<T> {
    pub fn new(main: Sparse<T>, track: Sparse<T>) -> Self {
        Aug { main, track }
    }

    pub fn is_zero(&self) -> bool {
        self.main.is_empty()
    }

    pub fn convert<U: Entry>(&self) -> Aug<U> {
        let f = |v: &Sparse<T>| v.iter().map(|(i, x)| (*i, U::from_big(&x.to_big()).expect("widening"))).collect();
        Aug { main: f(&self.main), track: f(&self.track) }
    }

    fn entry(&self, row: u32) -> Option<&T> {
        self.main.binary_search_by_key(&row, |p| p.0).ok().map(|i| &self.main[i].1)
    }
}

/// `a*x - b*y` on sorted sparse vectors.
fn combine<T: Entry>(a: &T, x: &Sparse<T>, b: &T, y: &Sparse<T>) -> Result<Sparse<T>, Overflow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a.mul(&x[i].1).ok_or(Overflow)?));
            i += 1;
        } else if take_y {
            out.push((y[j].0, b.mul(&y[j].1).ok_or(Overflow)?.neg().ok_or(Overflow)?));
            j += 1;
        } else {
            let v = a.mul(&x[i].1).ok_or(Overflow)?.sub(&b.mul(&y[j].1).ok_or(Overflow)?).ok_or(Overflow)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Divides by the gcd of all entries so that the leading main entry is
/// positive.
fn normalize<T: Entry>(v: &mut Aug<T>) -> Result<(), Overflow> {
    let mut g: Option<T> = None;
    for (_, x) in v.main.iter().chain(v.track.iter()) {
        g = Some(match g {
            None => x.gcd(x).ok_or(Overflow)?,
            Some(g) => g.gcd(x).ok_or(Overflow)?,
        });
        if g.as_ref().is_some_and(Entry::is_one) {
            break;
        }
    }
    let Some(mut g) = g else { return Ok(()) };
    if v.main.first().is_some_and(|p| p.1.is_negative()) {
        g = g.neg().ok_or(Overflow)?;
    }
    if !g.is_one() {
        for (_, x) in v.main.iter_mut().chain(v.track.iter_mut()) {
            *x = x.div_exact(&g);
        }
    }
    Ok(())
}

/// `x <- (a/g) x - (b/g) u` where `a = u[row]`, `b = x[row]`.
fn eliminate<T: Entry>(x: &mut Aug<T>, u: &Aug<T>, row: u32) -> Result<(), Overflow> {
    let a = u.entry(row).expect("pivot entry").clone();
    let b = x.entry(row).expect("eliminated entry").clone();
    let g = a.gcd(&b).ok_or(Overflow)?;
    let (a, b) = (a.div_exact(&g), b.div_exact(&g));
    x.main = combine(&a, &x.main, &b, &u.main)?;
    if !x.track.is_empty() || !u.track.is_empty() {
        x.track = combine(&a, &x.track, &b, &u.track)?;
    }
    normalize(x)
}

/// Reduced columns with distinct pivots.
#[derive(Clone, Debug, Default)]
pub struct Reducer<T> {
    cols: Vec<Aug<T>>,
    pivot_of: HashMap<u32, usize>,
}

impl<T: Entry> Reducer<T> {
    pub fn new() -> Self {
        Reducer { cols: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Aug<T>] {
        &self.cols
    }

    /// Reduces `x` until its leading row is not a pivot.
    pub fn reduce(&self, mut x: Aug<T>) -> Result<Aug<T>, Overflow> {
        normalize(&mut x)?;
        while let Some(&(p, _)) = x.main.first() {
            let Some(&i) = self.pivot_of.get(&p) else { break };
            eliminate(&mut x, &self.cols[i], p)?;
        }
        Ok(x)
    }

    /// Clears every entry of `x` in a pivot row.
    pub fn reduce_fully(&self, x: Aug<T>) -> Result<Aug<T>, Overflow> {
        let mut x = self.reduce(x)?;
        let mut last: Option<u32> = None;
        loop {
            let next = x.main.iter().map(|p| p.0).find(|&r| last.is_none_or(|l| r > l) && self.pivot_of.contains_key(&r));
            let Some(r) = next else { break };
            eliminate(&mut x, &self.cols[self.pivot_of[&r]], r)?;
            last = Some(r);
        }
        Ok(x)
    }

    /// Reduces and stores `x`. Returns the reduced vector when it became
    /// zero, i.e. when `x` was dependent on the stored columns.
    pub fn insert(&mut self, x: Aug<T>) -> Result<Option<Aug<T>>, Overflow> {
        let x = self.reduce(x)?;
        match x.main.first() {
            None => Ok(Some(x)),
            Some(&(p, _)) => {
                self.pivot_of.insert(p, self.cols.len());
                self.cols.push(x);
                Ok(None)
            }
        }
    }

    /// Drops the columns stored after the first `len`.
    pub fn truncate(&mut self, len: usize) {
        for c in self.cols.drain(len..) {
            self.pivot_of.remove(&c.main[0].0);
        }
    }

    pub fn convert<U: Entry>(&self) -> Reducer<U> {
        Reducer { cols: self.cols.iter().map(Aug::convert).collect(), pivot_of: self.pivot_of.clone() }
    }
}

/// A reducer that starts with machine integers and switches to big integers
/// the first time an operation overflows.
#[derive(Clone, Debug)]
pub enum Engine {
    Small(Reducer<i64>),
    Big(Reducer<BigInt>),
}

impl Default for Engine {
    fn default() -> Self {
        Engine::Small(Reducer::new())
    }
}

fn to_small(v: &Aug<BigInt>) -> Option<Aug<i64>> {
    let f = |s: &Sparse<BigInt>| s.iter().map(|(i, x)| x.to_i64().map(|x| (*i, x))).collect::<Option<Vec<_>>>();
    Some(Aug { main: f(&v.main)?, track: f(&v.track)? })
}

impl Engine {
    pub fn rank(&self) -> usize {
        match self {
            Engine::Small(r) => r.rank(),
            Engine::Big(r) => r.rank(),
        }
    }

    pub fn is_big(&self) -> bool {
        matches!(self, Engine::Big(_))
    }

    fn promote(&mut self) {
        if let Engine::Small(r) = self {
            *self = Engine::Big(r.convert());
        }
    }

    /// Runs `f` on machine integers when possible, otherwise on big integers.
    fn run<R>(
        &mut self,
        x: &Aug<BigInt>,
        small: impl FnOnce(&mut Reducer<i64>, Aug<i64>) -> Result<R, Overflow>,
        big: impl FnOnce(&mut Reducer<BigInt>, Aug<BigInt>) -> Result<R, Overflow>,
    ) -> R {
        if let Engine::Small(r) = self {
            if let Some(xs) = to_small(x) {
                let before = r.rank();
                match small(r, xs) {
                    Ok(v) => return v,
                    // Anything stored before the overflow is kept; only the
                    // failed vector is redone.
                    Err(Overflow) => r.truncate(before),
                }
            }
        }
        self.promote();
        match self {
            Engine::Big(r) => big(r, x.clone()).expect("big integers do not overflow"),
            Engine::Small(_) => unreachable!(),
        }
    }

    pub fn insert(&mut self, x: &Aug<BigInt>) -> Option<Aug<BigInt>> {
        let small = |r: &mut Reducer<i64>, x| r.insert(x).map(|o| o.map(|v| v.convert()));
        self.run(x, small, |r, x| r.insert(x))
    }

    pub fn reduce(&mut self, x: &Aug<BigInt>) -> Aug<BigInt> {
        self.run(x, |r, x| r.reduce(x).map(|v| v.convert()), |r, x| r.reduce(x))
    }

    pub fn reduce_fully(&mut self, x: &Aug<BigInt>) -> Aug<BigInt> {
        self.run(x, |r, x| r.reduce_fully(x).map(|v| v.convert()), |r, x| r.reduce_fully(x))
    }

    pub fn truncate(&mut self, len: usize) {
        match self {
            Engine::Small(r) => r.truncate(len),
            Engine::Big(r) => r.truncate(len),
        }
    }

    /// Stored columns with big integer entries.
    pub fn columns_big(&self) -> Vec<Aug<BigInt>> {
        match self {
            Engine::Small(r) => r.columns().iter().map(Aug::convert).collect(),
            Engine::Big(r) => r.columns().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[(u32, i64)]) -> Aug<BigInt> {
        Aug::new(v.iter().map(|&(i, x)| (i, BigInt::from(x))).collect(), Vec::new())
    }

    #[test]
    fn rank_of_a_dependent_set() {
        let mut e = Engine::default();
        assert!(e.insert(&col(&[(0, 1), (1, -1)])).is_none());
        assert!(e.insert(&col(&[(1, 1), (2, -1)])).is_none());
        assert!(e.insert(&col(&[(0, 2), (2, -2)])).is_some());
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn overflow_promotes() {
        let mut e = Engine::default();
        let huge = i64::MAX / 2;
        assert!(e.insert(&col(&[(0, huge), (1, 1)])).is_none());
        assert!(e.insert(&col(&[(0, huge - 1), (1, 3)])).is_none());
        assert!(e.is_big());
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn full_reduction_clears_pivot_rows() {
        let mut e = Engine::default();
        e.insert(&col(&[(1, 2), (3, 1)]));
        let x = e.reduce_fully(&col(&[(0, 1), (1, 1), (2, 5)]));
        assert!(x.main.iter().all(|p| p.0 != 1));
        assert_eq!(x.main[0].0, 0);
    }

    #[test]
    fn tracking_records_combination() {
        let mut e = Engine::default();
        let mut a = col(&[(0, 1), (1, 1)]);
        a.track = vec![(0, BigInt::from(1))];
        let mut b = col(&[(0, 1), (1, 1)]);
        b.track = vec![(1, BigInt::from(1))];
        e.insert(&a);
        let z = e.insert(&b).unwrap();
        assert!(z.main.is_empty());
        assert_eq!(z.track, vec![(0, BigInt::from(-1)), (1, BigInt::from(1))]);
    }
}
