// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Colours and small colour sets.
//!
//! Colours are the integers `1..=Δ+π` with their natural order. A
//! [`ColourSet`] is a bitmask over at most [`MAX_PALETTE`] colours, which keeps
//! missing-colour queries constant time.

use core::fmt;

/// Largest supported palette size `Δ + π`.
pub const MAX_PALETTE: usize = 128;

/// A colour in `1..=MAX_PALETTE`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Colour(u8);

impl Colour {
    /// Returns `None` unless `1 <= value <= MAX_PALETTE`.
    pub const fn new(value: usize) -> Option<Colour> {
        if value >= 1 && value <= MAX_PALETTE {
            Some(Colour(value as u8))
        } else {
            None
        }
    }

    #[inline]
    pub const fn get(self) -> usize {
        self.0 as usize
    }

    #[inline]
    const fn bit(self) -> u128 {
        1u128 << (self.0 - 1)
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of colours.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColourSet(u128);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    /// The palette `{1, …, size}`.
    pub fn palette(size: usize) -> ColourSet {
        debug_assert!(size <= MAX_PALETTE);
        if size >= 128 {
            ColourSet(u128::MAX)
        } else {
            ColourSet((1u128 << size) - 1)
        }
    }

    #[inline]
    pub fn contains(self, c: Colour) -> bool {
        self.0 & c.bit() != 0
    }

    #[inline]
    pub fn insert(&mut self, c: Colour) {
        self.0 |= c.bit();
    }

    #[inline]
    pub fn remove(&mut self, c: Colour) {
        self.0 &= !c.bit();
    }

    #[inline]
    pub fn with(mut self, c: Colour) -> ColourSet {
        self.insert(c);
        self
    }

    #[inline]
    pub fn without(mut self, c: Colour) -> ColourSet {
        self.remove(c);
        self
    }

    #[inline]
    pub fn union(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest colour in the natural order.
    #[inline]
    pub fn min(self) -> Option<Colour> {
        if self.0 == 0 {
            None
        } else {
            Some(Colour(self.0.trailing_zeros() as u8 + 1))
        }
    }

    /// Smallest colour under the order induced by `rank`.
    pub fn min_by_rank(self, rank: impl Fn(Colour) -> usize) -> Option<Colour> {
        self.iter().min_by_key(|&c| (rank(c), c))
    }

    pub fn iter(self) -> impl Iterator<Item = Colour> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(Colour(tz as u8 + 1))
            }
        })
    }
}

impl FromIterator<Colour> for ColourSet {
    fn from_iter<I: IntoIterator<Item = Colour>>(iter: I) -> Self {
        let mut s = ColourSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| c.get())).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: usize) -> Colour {
        Colour::new(v).unwrap()
    }

    #[test]
    fn colour_range() {
        assert!(Colour::new(0).is_none());
        assert!(Colour::new(MAX_PALETTE + 1).is_none());
        assert_eq!(Colour::new(MAX_PALETTE).unwrap().get(), MAX_PALETTE);
    }

    #[test]
    fn set_operations() {
        let p = ColourSet::palette(4);
        assert_eq!(p.len(), 4);
        assert_eq!(p.min(), Some(col(1)));
        let s = p.without(col(1)).without(col(3));
        assert_eq!(
            s.iter().map(|c| c.get()).collect::<alloc::vec::Vec<_>>(),
            [2, 4]
        );
        assert_eq!(
            s.intersection(ColourSet::EMPTY.with(col(4))).min(),
            Some(col(4))
        );
        assert_eq!(ColourSet::palette(128).len(), 128);
    }

    #[test]
    fn reordered_minimum_puts_ranked_colour_last() {
        let s = ColourSet::palette(3);
        let beta = col(1);
        let m = s.min_by_rank(|c| if c == beta { usize::MAX } else { c.get() });
        assert_eq!(m, Some(col(2)));
    }
}
