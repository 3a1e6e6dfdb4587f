//! Extended (possibly infinite) distance values.
//!
//! Disconnection is represented by a dedicated `Infinite` variant rather than
//! a large finite number, so arithmetic overflow can never masquerade as
//! connectivity.

use std::cmp::Ordering;
use std::fmt;

/// A value that is either finite or positive infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ext<T> {
    Finite(T),
    Infinite,
}

/// Shortest-path weight: finite non-negative real or infinite.
pub type Dist = Ext<f64>;

/// Hop count: finite non-negative integer or infinite.
pub type HopCount = Ext<usize>;

impl<T> Ext<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Ext::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Ext::Finite(x) => Some(x),
            Ext::Infinite => None,
        }
    }
}

impl Dist {
    /// Multiplies a distance by a finite non-negative stretch factor.
    /// Infinity is absorbing.
    pub fn scale(self, factor: f64) -> Dist {
        match self {
            Ext::Finite(x) => Ext::Finite(x * factor),
            Ext::Infinite => Ext::Infinite,
        }
    }
}

impl<T: PartialOrd> PartialOrd for Ext<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Ext::Finite(a), Ext::Finite(b)) => a.partial_cmp(b),
            (Ext::Finite(_), Ext::Infinite) => Some(Ordering::Less),
            (Ext::Infinite, Ext::Finite(_)) => Some(Ordering::Greater),
            (Ext::Infinite, Ext::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl<T: Ord> Ord for Ext<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ext::Finite(a), Ext::Finite(b)) => a.cmp(b),
            (Ext::Finite(_), Ext::Infinite) => Ordering::Less,
            (Ext::Infinite, Ext::Finite(_)) => Ordering::Greater,
            (Ext::Infinite, Ext::Infinite) => Ordering::Equal,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Finite(x) => write!(f, "{x}"),
            Ext::Infinite => write!(f, "inf"),
        }
    }
}
