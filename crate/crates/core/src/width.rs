//! The refined width `(k, f)`: conventional width plus the number of bags
//! attaining it. Improvements that shave off largest bags without lowering
//! `k` still register as progress under the lexicographic order.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Width {
    /// Largest bag size minus one.
    pub k: u32,
    /// Number of bags of size `k + 1`.
    pub f: u64,
}

impl Width {
    pub fn new(k: u32, f: u64) -> Self {
        Width { k, f }
    }

    /// Width contributed by a single bag of `size` vertices.
    pub fn of_bag_size(size: usize) -> Self {
        Width {
            k: (size.max(1) - 1) as u32,
            f: 1,
        }
    }

}

/// Combine widths of disjoint parts of a decomposition: the larger `k`
/// dominates, equal `k`s accumulate their largest-bag counts.
impl std::ops::Add for Width {
    type Output = Width;

    fn add(self, other: Width) -> Width {
        match self.k.cmp(&other.k) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal => Width {
                k: self.k,
                f: self.f + other.f,
            },
        }
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.f)
    }
}

impl fmt::Debug for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.f)
    }
}
