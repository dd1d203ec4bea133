use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Closed integer interval `[lo, hi]`; empty when `hi < lo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    /// The interval of `len` consecutive integers starting at `lo`.
    pub fn with_len(lo: i64, len: i64) -> Self {
        Interval { lo, hi: lo + len - 1 }
    }

    pub fn len(&self) -> i64 {
        (self.hi - self.lo + 1).max(0)
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Splits `[start, ...]` into consecutive intervals of the given lengths.
    pub fn consecutive<const N: usize>(start: i64, lens: [i64; N]) -> [Interval; N] {
        let mut next = start;
        lens.map(|len| {
            let iv = Interval::with_len(next, len);
            next += len;
            iv
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[]")
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_empty() {
            Vec::<i64>::new().serialize(s)
        } else {
            [self.lo, self.hi].serialize(s)
        }
    }
}

/// Unused labels of one interval. The constructions only ever draw from the
/// bottom or the top, so the unused part stays a contiguous range.
#[derive(Clone, Debug)]
pub(crate) struct LabelPool {
    name: &'static str,
    lo: i64,
    hi: i64,
}

impl LabelPool {
    pub(crate) fn new(name: &'static str, iv: Interval) -> Self {
        LabelPool { name, lo: iv.lo, hi: iv.hi }
    }

    pub(crate) fn remaining(&self) -> i64 {
        (self.hi - self.lo + 1).max(0)
    }

    pub(crate) fn max(&self) -> Option<i64> {
        (self.remaining() > 0).then_some(self.hi)
    }

    /// The `n` smallest unused labels, ascending.
    pub(crate) fn take_low(&mut self, n: usize) -> Result<Vec<i64>> {
        self.check(n)?;
        let out: Vec<i64> = (self.lo..self.lo + n as i64).collect();
        self.lo += n as i64;
        Ok(out)
    }

    /// The `n` largest unused labels, ascending.
    pub(crate) fn take_high(&mut self, n: usize) -> Result<Vec<i64>> {
        self.check(n)?;
        let out: Vec<i64> = (self.hi - n as i64 + 1..=self.hi).collect();
        self.hi -= n as i64;
        Ok(out)
    }

    pub(crate) fn expect_exhausted(&self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::Internal(format!("interval {} has {} unused labels", self.name, self.remaining())));
        }
        Ok(())
    }

    fn check(&self, n: usize) -> Result<()> {
        if (n as i64) > self.remaining() {
            return Err(Error::Internal(format!(
                "interval {} exhausted: need {n}, have {}",
                self.name,
                self.remaining()
            )));
        }
        Ok(())
    }
}
