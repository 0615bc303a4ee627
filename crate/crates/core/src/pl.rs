//! Continuous piecewise-linear functions on `[0, 1]` with rational
//! breakpoints.
//!
//! A [`PLFunction`] is stored in canonical form: breakpoints sorted by `t`,
//! the first at `t = 0`, the last at `t = 1`, and no interior breakpoint
//! collinear with its neighbours. Two functions are equal exactly when
//! their breakpoint lists are equal, so `==` is pointwise equality.
//!
//! Every binary operation works on the merged grid of both operands. Between
//! two consecutive merged nodes both functions are affine, so their
//! difference is affine too. That makes the order test exact when it only
//! checks nodes, and it makes join and meet exact once the crossing points
//! are inserted as extra nodes.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Breakpoint {
    pub t: Rational,
    pub value: Rational,
}

impl Breakpoint {
    pub fn new(t: Rational, value: Rational) -> Self {
        Breakpoint { t, value }
    }
}

impl fmt::Debug for Breakpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.value)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLFunction {
    points: Vec<Breakpoint>,
}

fn in_unit_interval(t: &Rational) -> bool {
    !t.is_negative() && *t <= Rational::one()
}

fn collinear(a: &Breakpoint, b: &Breakpoint, c: &Breakpoint) -> bool {
    (&b.value - &a.value) * (&c.t - &a.t) == (&c.value - &a.value) * (&b.t - &a.t)
}

/// Sorted union of two sorted node lists.
fn merge_grids(a: &[Breakpoint], b: &[Breakpoint]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => match x.t.cmp(&y.t) {
                Ordering::Less => {
                    i += 1;
                    &x.t
                }
                Ordering::Greater => {
                    j += 1;
                    &y.t
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    &x.t
                }
            },
            (Some(x), None) => {
                i += 1;
                &x.t
            }
            (None, Some(y)) => {
                j += 1;
                &y.t
            }
            (None, None) => unreachable!(),
        };
        out.push(next.clone());
    }
    out
}

impl PLFunction {
    /// Builds a canonical function from `(t, value)` pairs in any order.
    ///
    /// Repeated `t` with equal values are merged; with different values the
    /// input is rejected as [`Error::MalformedFunction`]. Both endpoints
    /// `t = 0` and `t = 1` must be present.
    pub fn new<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut pts: Vec<Breakpoint> = points
            .into_iter()
            .map(|(t, value)| Breakpoint { t, value })
            .collect();
        if pts.is_empty() {
            return Err(Error::DomainError("no breakpoints given".into()));
        }
        if let Some(bad) = pts.iter().find(|p| !in_unit_interval(&p.t)) {
            return Err(Error::DomainError(alloc::format!(
                "breakpoint t = {} lies outside [0, 1]",
                bad.t
            )));
        }
        pts.sort_by(|a, b| a.t.cmp(&b.t));
        let mut dedup: Vec<Breakpoint> = Vec::with_capacity(pts.len());
        for p in pts {
            match dedup.last() {
                Some(last) if last.t == p.t => {
                    if last.value != p.value {
                        return Err(Error::MalformedFunction(alloc::format!(
                            "conflicting values {} and {} at t = {}",
                            last.value,
                            p.value,
                            p.t
                        )));
                    }
                }
                _ => dedup.push(p),
            }
        }
        if !dedup[0].t.is_zero() {
            return Err(Error::DomainError("missing breakpoint at t = 0".into()));
        }
        if dedup[dedup.len() - 1].t != Rational::one() {
            return Err(Error::DomainError("missing breakpoint at t = 1".into()));
        }
        Ok(Self::from_sorted(dedup))
    }

    /// Canonicalises nodes already known to be sorted, distinct and to span
    /// `[0, 1]`.
    pub(crate) fn from_sorted(nodes: Vec<Breakpoint>) -> Self {
        debug_assert!(nodes.len() >= 2);
        debug_assert!(nodes[0].t.is_zero() && nodes[nodes.len() - 1].t == Rational::one());
        debug_assert!(nodes.windows(2).all(|w| w[0].t < w[1].t));
        let mut out: Vec<Breakpoint> = Vec::with_capacity(nodes.len());
        for p in nodes {
            while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
                out.pop();
            }
            out.push(p);
        }
        PLFunction { points: out }
    }

    pub fn constant(c: Rational) -> Self {
        PLFunction {
            points: alloc::vec![
                Breakpoint::new(Rational::zero(), c.clone()),
                Breakpoint::new(Rational::one(), c),
            ],
        }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `u(t) = t`.
    pub fn identity() -> Self {
        PLFunction {
            points: alloc::vec![
                Breakpoint::new(Rational::zero(), Rational::zero()),
                Breakpoint::new(Rational::one(), Rational::one()),
            ],
        }
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.points
    }

    pub fn is_zero(&self) -> bool {
        self.points.iter().all(|p| p.value.is_zero())
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if !in_unit_interval(t) {
            return Err(Error::DomainError(alloc::format!(
                "t = {} lies outside [0, 1]",
                t
            )));
        }
        Ok(self.eval_in_domain(t))
    }

    /// Evaluation for `t` already known to lie in `[0, 1]`.
    pub(crate) fn eval_in_domain(&self, t: &Rational) -> Rational {
        let idx = self.points.partition_point(|p| p.t <= *t);
        if idx == 0 {
            return self.points[0].value.clone();
        }
        let left = &self.points[idx - 1];
        if left.t == *t || idx == self.points.len() {
            return left.value.clone();
        }
        let right = &self.points[idx];
        let w = (t - &left.t) / (&right.t - &left.t);
        &left.value + w * (&right.value - &left.value)
    }

    pub fn value_at_zero(&self) -> &Rational {
        &self.points[0].value
    }

    /// One-sided derivative at `0+`.
    pub fn slope_at_zero(&self) -> Rational {
        let (a, b) = (&self.points[0], &self.points[1]);
        (&b.value - &a.value) / (&b.t - &a.t)
    }

    /// Sorted union of the breakpoint abscissae of `self` and `other`.
    pub fn merged_grid(&self, other: &PLFunction) -> Vec<Rational> {
        merge_grids(&self.points, &other.points)
    }

    pub fn scale(&self, c: &Rational) -> PLFunction {
        if c.is_zero() {
            return PLFunction::zero();
        }
        PLFunction {
            points: self
                .points
                .iter()
                .map(|p| Breakpoint::new(p.t.clone(), c * &p.value))
                .collect(),
        }
    }

    /// `c1 * f + c2 * g`, canonical.
    pub fn linear_combine(c1: &Rational, f: &PLFunction, c2: &Rational, g: &PLFunction) -> Self {
        let nodes = f
            .merged_grid(g)
            .into_iter()
            .map(|t| {
                let v = c1 * f.eval_in_domain(&t) + c2 * g.eval_in_domain(&t);
                Breakpoint::new(t, v)
            })
            .collect();
        Self::from_sorted(nodes)
    }

    /// Pointwise max (`pick_max = true`) or min, with crossings inserted.
    fn envelope(f: &PLFunction, g: &PLFunction, pick_max: bool) -> PLFunction {
        let grid = f.merged_grid(g);
        let fv: Vec<Rational> = grid.iter().map(|t| f.eval_in_domain(t)).collect();
        let gv: Vec<Rational> = grid.iter().map(|t| g.eval_in_domain(t)).collect();
        let choose = |a: &Rational, b: &Rational| -> Rational {
            if (a >= b) == pick_max {
                a.clone()
            } else {
                b.clone()
            }
        };
        let mut nodes = Vec::with_capacity(grid.len() * 2);
        for i in 0..grid.len() {
            if i > 0 {
                let d0 = &fv[i - 1] - &gv[i - 1];
                let d1 = &fv[i] - &gv[i];
                let crosses = (d0.is_positive() && d1.is_negative())
                    || (d0.is_negative() && d1.is_positive());
                if crosses {
                    // Root of the affine difference on [grid[i-1], grid[i]].
                    let w = &d0 / (&d0 - &d1);
                    let t = &grid[i - 1] + &w * (&grid[i] - &grid[i - 1]);
                    let v = &fv[i - 1] + &w * (&fv[i] - &fv[i - 1]);
                    nodes.push(Breakpoint::new(t, v));
                }
            }
            nodes.push(Breakpoint::new(grid[i].clone(), choose(&fv[i], &gv[i])));
        }
        Self::from_sorted(nodes)
    }

    pub fn join(&self, other: &PLFunction) -> PLFunction {
        Self::envelope(self, other, true)
    }

    pub fn meet(&self, other: &PLFunction) -> PLFunction {
        Self::envelope(self, other, false)
    }

    pub fn abs_val(&self) -> PLFunction {
        self.join(&-self)
    }

    /// Positive part `f ∨ 0`.
    pub fn positive_part(&self) -> PLFunction {
        self.join(&PLFunction::zero())
    }

    /// `self ≤ other` everywhere on `[0, 1]`.
    pub fn leq(&self, other: &PLFunction) -> bool {
        self.first_violation(other).is_none()
    }

    /// Smallest node of the merged grid where `self > other`, if any.
    ///
    /// Since `self - other` is affine between merged nodes, `None` means
    /// `self ≤ other` on all of `[0, 1]`.
    pub fn first_violation(&self, other: &PLFunction) -> Option<Rational> {
        self.merged_grid(other)
            .into_iter()
            .find(|t| self.eval_in_domain(t) > other.eval_in_domain(t))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.points.iter().all(|p| !p.value.is_negative())
    }
}

/// Builds a canonical [`PLFunction`] from `(t, value)` pairs.
pub fn make_pl<I>(points: I) -> Result<PLFunction>
where
    I: IntoIterator<Item = (Rational, Rational)>,
{
    PLFunction::new(points)
}

impl Neg for &PLFunction {
    type Output = PLFunction;
    fn neg(self) -> PLFunction {
        PLFunction {
            points: self
                .points
                .iter()
                .map(|p| Breakpoint::new(p.t.clone(), -&p.value))
                .collect(),
        }
    }
}

impl Neg for PLFunction {
    type Output = PLFunction;
    fn neg(self) -> PLFunction {
        -&self
    }
}

impl Add<&PLFunction> for &PLFunction {
    type Output = PLFunction;
    fn add(self, rhs: &PLFunction) -> PLFunction {
        PLFunction::linear_combine(&Rational::one(), self, &Rational::one(), rhs)
    }
}

impl Sub<&PLFunction> for &PLFunction {
    type Output = PLFunction;
    fn sub(self, rhs: &PLFunction) -> PLFunction {
        PLFunction::linear_combine(&Rational::one(), self, &-Rational::one(), rhs)
    }
}

/// Renders in the expression-language literal form `pl [(t,v),...]`.
impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("pl [")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", p.t, p.value)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn pl(points: &[(i64, i64, i64, i64)]) -> PLFunction {
        PLFunction::new(points.iter().map(|&(a, b, c, d)| (q(a, b), q(c, d)))).unwrap()
    }

    fn tent() -> PLFunction {
        pl(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 0, 1)])
    }

    /// Independent interpolation: locate the segment by linear scan and
    /// apply the two-point form.
    fn interp_oracle(pts: &[(Rational, Rational)], t: &Rational) -> Rational {
        for w in pts.windows(2) {
            let ((t0, v0), (t1, v1)) = (&w[0], &w[1]);
            if t0 <= t && t <= t1 {
                return (v0 * (t1 - t) + v1 * (t - t0)) / (t1 - t0);
            }
        }
        panic!("t outside grid");
    }

    #[test]
    fn make_pl_identity() {
        let u = pl(&[(0, 1, 0, 1), (1, 1, 1, 1)]);
        assert_eq!(u, PLFunction::identity());
    }

    #[test]
    fn make_pl_removes_collinear_points() {
        let a = pl(&[(0, 1, 0, 1), (1, 2, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(a, PLFunction::identity());
        assert_eq!(a.breakpoints().len(), 2);
    }

    #[test]
    fn make_pl_keeps_tent() {
        assert_eq!(tent().breakpoints().len(), 3);
    }

    #[test]
    fn make_pl_sorts_and_merges_duplicates() {
        let f = PLFunction::new([
            (q(1, 1), q(0, 1)),
            (q(1, 2), q(1, 1)),
            (q(0, 1), q(0, 1)),
            (q(1, 2), q(1, 1)),
        ])
        .unwrap();
        assert_eq!(f, tent());
    }

    #[test]
    fn make_pl_errors() {
        let conflict = PLFunction::new([
            (q(0, 1), q(0, 1)),
            (q(1, 2), q(1, 1)),
            (q(1, 2), q(2, 1)),
            (q(1, 1), q(0, 1)),
        ]);
        assert!(matches!(conflict, Err(Error::MalformedFunction(_))));
        let no_zero = PLFunction::new([(q(1, 2), q(0, 1)), (q(1, 1), q(0, 1))]);
        assert!(matches!(no_zero, Err(Error::DomainError(_))));
        let no_one = PLFunction::new([(q(0, 1), q(0, 1)), (q(1, 2), q(0, 1))]);
        assert!(matches!(no_one, Err(Error::DomainError(_))));
        let outside = PLFunction::new([(q(0, 1), q(0, 1)), (q(3, 2), q(0, 1))]);
        assert!(matches!(outside, Err(Error::DomainError(_))));
        assert!(matches!(
            PLFunction::new(Vec::new()),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn eval_examples() {
        let u = PLFunction::identity();
        assert_eq!(u.eval(&q(3, 7)).unwrap(), q(3, 7));
        let pts = [(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1)), (q(1, 1), q(0, 1))];
        assert_eq!(interp_oracle(&pts, &q(3, 4)), q(1, 2));
        assert_eq!(tent().eval(&q(3, 4)).unwrap(), q(1, 2));
        let f = pl(&[(0, 1, 5, 3), (1, 1, 1, 1)]);
        assert_eq!(f.eval(&q(0, 1)).unwrap(), q(5, 3));
        assert_eq!(f.eval(&q(1, 1)).unwrap(), q(1, 1));
        assert!(matches!(u.eval(&q(-1, 2)), Err(Error::DomainError(_))));
        assert!(matches!(u.eval(&q(3, 2)), Err(Error::DomainError(_))));
    }

    #[test]
    fn linear_combine_examples() {
        let f = tent();
        let zero = PLFunction::linear_combine(&q(1, 1), &f, &q(-1, 1), &f);
        assert_eq!(zero, PLFunction::zero());
        let u = PLFunction::identity();
        let two_u = PLFunction::linear_combine(&q(1, 1), &u, &q(1, 1), &u);
        assert_eq!(two_u, pl(&[(0, 1, 0, 1), (1, 1, 2, 1)]));
        let s = PLFunction::linear_combine(&q(1, 1), &tent(), &q(1, 1), &u);
        // Sampling oracle: sum of the two interpolants at several points.
        for k in 0..=16 {
            let t = q(k, 16);
            let tent_pts = [(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1)), (q(1, 1), q(0, 1))];
            assert_eq!(s.eval(&t).unwrap(), interp_oracle(&tent_pts, &t) + &t);
        }
        assert_eq!(s.eval(&q(1, 2)).unwrap(), q(3, 2));
    }

    #[test]
    fn join_inserts_crossing() {
        let u = PLFunction::identity();
        let reflect = pl(&[(0, 1, 1, 1), (1, 1, 0, 1)]);
        let j = u.join(&reflect);
        assert_eq!(j, pl(&[(0, 1, 1, 1), (1, 2, 1, 2), (1, 1, 1, 1)]));
        // Dense sampling cross-check against max(t, 1 - t).
        for k in 0..=200 {
            let t = q(k, 200);
            let expect = core::cmp::max(t.clone(), q(1, 1) - &t);
            assert_eq!(j.eval(&t).unwrap(), expect);
        }
        let m = u.meet(&reflect);
        assert_eq!(m, pl(&[(0, 1, 0, 1), (1, 2, 1, 2), (1, 1, 0, 1)]));
    }

    #[test]
    fn meet_idempotent_and_abs_of_negative_tent() {
        let f = tent();
        assert_eq!(f.meet(&f), f);
        let neg = pl(&[(0, 1, 0, 1), (1, 2, -1, 1), (1, 1, 0, 1)]);
        assert_eq!(neg.abs_val(), tent());
    }

    #[test]
    fn abs_inserts_zero_crossings() {
        let f = pl(&[(0, 1, -1, 1), (1, 1, 1, 1)]);
        assert_eq!(f.abs_val(), pl(&[(0, 1, 1, 1), (1, 2, 0, 1), (1, 1, 1, 1)]));
    }

    #[test]
    fn leq_examples() {
        let u = PLFunction::identity();
        let one = PLFunction::one();
        assert!(u.leq(&one));
        assert!(!one.leq(&u));
        assert_eq!(one.first_violation(&u), Some(q(0, 1)));
        let two_u = u.scale(&q(2, 1));
        assert!(tent().leq(&two_u));
        for k in 0..=100 {
            let t = q(k, 100);
            assert!(tent().eval(&t).unwrap() <= two_u.eval(&t).unwrap());
        }
        assert!(!two_u.leq(&tent()));
    }

    #[test]
    fn display_is_literal_form() {
        assert_eq!(tent().to_string(), "pl [(0,0),(1/2,1),(1,0)]");
    }
}
