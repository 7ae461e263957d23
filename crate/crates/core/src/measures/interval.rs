use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Closed subinterval `[lo, hi]` of the unit interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo < Rational::zero() || hi > Rational::one() {
            return Err(Error::Domain(format!(
                "interval [{}, {}] leaves [0,1]",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        if lo > hi {
            return Err(Error::Domain(format!(
                "interval endpoints out of order: {} > {}",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn point(x: Rational) -> Result<Self> {
        Interval::new(x.clone(), x)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Length of the overlap with `[from, to]`.
    pub fn overlap(&self, from: &Rational, to: &Rational) -> Rational {
        let lo = if &self.lo > from { &self.lo } else { from };
        let hi = if &self.hi < to { &self.hi } else { to };
        if hi > lo {
            hi - lo
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// Finite union of closed intervals, kept sorted with touching or
/// overlapping members merged and zero-length members dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn unit() -> Self {
        IntervalSet {
            intervals: vec![Interval::unit()],
        }
    }

    pub fn from_interval(iv: Interval) -> Self {
        IntervalSet::from_intervals(vec![iv])
    }

    /// Normalizes an arbitrary list of intervals.
    pub fn from_intervals(mut intervals: Vec<Interval>) -> Self {
        intervals.retain(|iv| !iv.is_degenerate());
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalSet { intervals: merged }
    }

    /// Convenience for `[lo, hi]` pairs; fails if any pair is not a valid interval.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let ivs = pairs
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalSet::from_intervals(ivs))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Lebesgue length.
    pub fn len(&self) -> Rational {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        IntervalSet::from_intervals(all)
    }

    /// Closure of `[0,1]` minus this set.
    pub fn complement(&self) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = Rational::zero();
        for iv in &self.intervals {
            if iv.lo > cursor {
                out.push(Interval {
                    lo: cursor.clone(),
                    hi: iv.lo.clone(),
                });
            }
            cursor = iv.hi.clone();
        }
        if cursor < Rational::one() {
            out.push(Interval {
                lo: cursor,
                hi: Rational::one(),
            });
        }
        IntervalSet { intervals: out }
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                let lo = a.lo.clone().max(b.lo.clone());
                let hi = a.hi.clone().min(b.hi.clone());
                if lo < hi {
                    out.push(Interval { lo, hi });
                }
            }
        }
        IntervalSet::from_intervals(out)
    }

    /// Length of the overlap with `[from, to]`.
    pub fn overlap(&self, from: &Rational, to: &Rational) -> Rational {
        self.intervals.iter().map(|iv| iv.overlap(from, to)).sum()
    }

    /// All interval endpoints, ascending.
    pub fn endpoints(&self) -> impl Iterator<Item = &Rational> {
        self.intervals.iter().flat_map(|iv| [&iv.lo, &iv.hi])
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}
