//! Linear-time maximum bond on a wheel.
//!
//! Label the rim `0..n` in cyclic order. Apart from the trivial bond that
//! isolates the hub, every bond cuts off a proper rim arc `i..=j`, with
//! weight `b[i-1] + b[j] + sum(a[i..=j])`. Arcs split into three families:
//! those avoiding rim vertex 0, those avoiding vertex 1, and those holding
//! both 0 and 1. The first two are one Kadane-style scan each; the third is
//! a prefix/suffix maximum combination.

use crate::scalar::Scalar;
use std::collections::BTreeSet;

/// Spoke weights `a[i] = w(i, hub)` and rim weights `b[i] = w(i, i+1 mod n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WheelWeights<T> {
    pub a: Vec<T>,
    pub b: Vec<T>,
}

impl<T: Scalar> WheelWeights<T> {
    pub fn new(a: Vec<T>, b: Vec<T>) -> Self {
        assert_eq!(a.len(), b.len(), "spoke and rim vectors differ in length");
        assert!(a.len() >= 3, "a wheel needs at least 3 rim vertices");
        WheelWeights { a, b }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Rotation by `k`: new index `t` is old index `t + k mod n`.
    fn rotated(&self, k: usize) -> Self {
        let n = self.n();
        WheelWeights {
            a: (0..n).map(|t| self.a[(t + k) % n].clone()).collect(),
            b: (0..n).map(|t| self.b[(t + k) % n].clone()).collect(),
        }
    }

    /// Weight of the bond cutting off the cyclic arc `i..=j`.
    pub fn arc_weight(&self, i: usize, j: usize) -> T {
        let n = self.n();
        let mut total = self.b[(i + n - 1) % n].clone() + self.b[j].clone();
        let mut k = i;
        loop {
            total = total + self.a[k].clone();
            if k == j {
                return total;
            }
            k = (k + 1) % n;
        }
    }

    pub fn trivial_weight(&self) -> T {
        self.a.iter().fold(T::zero(), |s, x| s + x.clone())
    }
}

/// Best arc `i..=j` with `1 <= i <= j <= n-1`; ties go to the
/// lexicographically smallest `(i, j)`.
pub fn wheel_best_bond_type1<T: Scalar>(w: &WheelWeights<T>) -> (T, usize, usize) {
    let n = w.n();
    // ending: best of b[i-1] + a[i..=j] over i <= j, with its start
    let mut ending = w.b[0].clone() + w.a[1].clone();
    let mut start = 1;
    let mut best = (ending.clone() + w.b[1].clone(), 1, 1);
    for j in 2..n {
        if w.b[j - 1] > ending {
            ending = w.b[j - 1].clone();
            start = j;
        }
        ending = ending + w.a[j].clone();
        let value = ending.clone() + w.b[j].clone();
        if value > best.0 || (value == best.0 && (start, j) < (best.1, best.2)) {
            best = (value, start, j);
        }
    }
    best
}

/// Best arc avoiding rim vertex 1, reported in original indices as
/// `(value, i, j)` for the cyclic arc `i..=j`.
pub fn wheel_best_bond_type2<T: Scalar>(w: &WheelWeights<T>) -> (T, usize, usize) {
    let n = w.n();
    let (v, i, j) = wheel_best_bond_type1(&w.rotated(1));
    (v, (i + 1) % n, (j + 1) % n)
}

/// Best arc containing rim vertices 0 and 1, i.e. `s..=n-1, 0, 1..=r`
/// with `1 <= r` and `r + 2 <= s <= n` (`s = n` starts the arc at 0).
/// Returns `(value, r, s)`.
pub fn wheel_best_bond_type3<T: Scalar>(w: &WheelWeights<T>) -> (T, usize, usize) {
    let n = w.n();
    // right[k] = max over 1 <= r <= k of b[r] + a[1..=r]
    let mut right: Vec<(T, usize)> = Vec::with_capacity(n);
    right.push((T::zero(), 0)); // unused slot for k = 0
    let mut prefix = T::zero();
    for r in 1..n {
        prefix = prefix + w.a[r].clone();
        let cand = prefix.clone() + w.b[r].clone();
        let keep = r > 1 && right[r - 1].0 >= cand;
        right.push(if keep { right[r - 1].clone() } else { (cand, r) });
    }
    // left[k] = max over k <= s <= n of b[s-1] + a[s..n]
    let mut left: Vec<(T, usize)> = vec![(T::zero(), 0); n + 1];
    left[n] = (w.b[n - 1].clone(), n);
    let mut suffix = T::zero();
    for s in (2..n).rev() {
        suffix = suffix + w.a[s].clone();
        let cand = suffix.clone() + w.b[s - 1].clone();
        left[s] = if left[s + 1].0 > cand { left[s + 1].clone() } else { (cand, s) };
    }
    let mut best: Option<(T, usize, usize)> = None;
    for m in 2..n {
        let (rv, r) = &right[m - 1];
        let (lv, s) = &left[m + 1];
        let value = rv.clone() + lv.clone();
        if best.as_ref().is_none_or(|b| value > b.0) {
            best = Some((value, *r, *s));
        }
    }
    let (v, r, s) = best.expect("n >= 3 leaves a vertex to exclude");
    (v + w.a[0].clone(), r, s)
}

/// Outcome of the wheel solver: either the hub alone or a rim arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WheelBond {
    Hub,
    /// Cyclic arc `i..=j` of rim indices.
    Arc(usize, usize),
}

impl WheelBond {
    /// Rim indices on the side without the hub (empty for [`WheelBond::Hub`]).
    pub fn rim_side(&self, n: usize) -> BTreeSet<usize> {
        match *self {
            WheelBond::Hub => BTreeSet::new(),
            WheelBond::Arc(i, j) => {
                let mut s = BTreeSet::new();
                let mut k = i;
                loop {
                    s.insert(k);
                    if k == j {
                        return s;
                    }
                    k = (k + 1) % n;
                }
            }
        }
    }
}

/// Maximum bond of the wheel. Ties prefer the trivial bond, then the
/// families in order 1, 2, 3.
pub fn wheel_maxbond<T: Scalar>(w: &WheelWeights<T>) -> (T, WheelBond) {
    let n = w.n();
    let mut best = (w.trivial_weight(), WheelBond::Hub);
    let (v1, i1, j1) = wheel_best_bond_type1(w);
    let (v2, i2, j2) = wheel_best_bond_type2(w);
    let (v3, r3, s3) = wheel_best_bond_type3(w);
    for (v, b) in [
        (v1, WheelBond::Arc(i1, j1)),
        (v2, WheelBond::Arc(i2, j2)),
        (v3, WheelBond::Arc(s3 % n, r3)),
    ] {
        if v > best.0 {
            best = (v, b);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    fn ww(a: &[i64], b: &[i64]) -> WheelWeights<Rational> {
        WheelWeights::new(ints(a), ints(b))
    }

    /// Every arc, by direct summation.
    fn all_arcs(w: &WheelWeights<Rational>) -> Vec<(Rational, usize, usize)> {
        let n = w.n();
        let mut out = Vec::new();
        for i in 0..n {
            for len in 1..n {
                let j = (i + len - 1) % n;
                out.push((w.arc_weight(i, j), i, j));
            }
        }
        out
    }

    fn contains(i: usize, j: usize, n: usize, x: usize) -> bool {
        (x + n - i) % n <= (j + n - i) % n
    }

    #[test]
    fn type1_examples() {
        assert_eq!(wheel_best_bond_type1(&ww(&[0, 1, 1, 1], &[1, 1, 1, 1])), (Rational::integer(5), 1, 3));
        let neg = ww(&[-10, -10, -10, -10, -10], &[1, 1, 1, 1, 1]);
        assert_eq!(wheel_best_bond_type1(&neg).0, Rational::integer(-8));
        for x in -3..=3 {
            let w = ww(&[0, x, 0], &[1, 0, 1]);
            let oracle = all_arcs(&w)
                .into_iter()
                .filter(|&(_, i, j)| !contains(i, j, 3, 0))
                .map(|t| t.0)
                .max()
                .unwrap();
            assert_eq!(wheel_best_bond_type1(&w).0, oracle);
        }
    }

    #[test]
    fn type3_examples() {
        assert_eq!(wheel_best_bond_type3(&ww(&[1; 4], &[1; 4])).0, Rational::integer(5));
        assert_eq!(wheel_best_bond_type3(&ww(&[0; 4], &[0; 4])).0, Rational::zero());
        let w = ww(&[100, 1, 1, 1, 1], &[1; 5]);
        let oracle = all_arcs(&w)
            .into_iter()
            .filter(|&(_, i, j)| contains(i, j, 5, 0) && contains(i, j, 5, 1))
            .map(|t| t.0)
            .max()
            .unwrap();
        assert_eq!(wheel_best_bond_type3(&w).0, oracle);
    }

    #[test]
    fn whole_wheel_examples() {
        assert_eq!(wheel_maxbond(&ww(&[1; 4], &[1; 4])).0, Rational::integer(5));
        assert_eq!(wheel_maxbond(&ww(&[1; 5], &[1; 5])).0, Rational::integer(6));
        assert_eq!(wheel_maxbond(&ww(&[10; 3], &[0; 3])), (Rational::integer(30), WheelBond::Hub));
    }

    #[test]
    fn integers_work_too() {
        let w = WheelWeights::new(vec![1i64, 1, 1, 1], vec![1i64, 1, 1, 1]);
        assert_eq!(wheel_maxbond(&w).0, 5);
    }

    use num_traits::Zero;

    proptest! {
        #[test]
        fn families_match_arc_enumeration(n in 3usize..10, seed in prop::collection::vec(-20i64..=20, 20)) {
            let w = ww(&seed[..n], &seed[10..10 + n]);
            let arcs = all_arcs(&w);
            let fam = |keep: &dyn Fn(usize, usize) -> bool| {
                arcs.iter().filter(|(_, i, j)| keep(*i, *j)).map(|t| t.0.clone()).max()
            };
            let (v1, i1, j1) = wheel_best_bond_type1(&w);
            prop_assert_eq!(Some(v1.clone()), fam(&|i, j| !contains(i, j, n, 0)));
            prop_assert_eq!(w.arc_weight(i1, j1), v1);
            let (v2, i2, j2) = wheel_best_bond_type2(&w);
            prop_assert_eq!(Some(v2.clone()), fam(&|i, j| !contains(i, j, n, 1)));
            prop_assert_eq!(w.arc_weight(i2, j2), v2);
            let (v3, r3, s3) = wheel_best_bond_type3(&w);
            prop_assert_eq!(Some(v3.clone()), fam(&|i, j| contains(i, j, n, 0) && contains(i, j, n, 1)));
            prop_assert_eq!(w.arc_weight(s3 % n, r3), v3);
            let (v, b) = wheel_maxbond(&w);
            let value = match b {
                WheelBond::Hub => w.trivial_weight(),
                WheelBond::Arc(i, j) => w.arc_weight(i, j),
            };
            prop_assert_eq!(value, v);
        }

        #[test]
        fn type1_ties_pick_smallest_pair(n in 3usize..8, seed in prop::collection::vec(-1i64..=1, 16)) {
            let w = ww(&seed[..n], &seed[8..8 + n]);
            let (v, i, j) = wheel_best_bond_type1(&w);
            let first = (1..n)
                .flat_map(|i| (i..n).map(move |j| (i, j)))
                .find(|&(i, j)| w.arc_weight(i, j) == v)
                .unwrap();
            prop_assert_eq!((i, j), first);
        }
    }
}
