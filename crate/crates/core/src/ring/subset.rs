use super::{Elem, FiniteRing};

/// A subset of a finite ring stored as a sorted handle list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdditiveSubset {
    members: Vec<Elem>,
}

impl AdditiveSubset {
    pub fn from_sorted(members: Vec<Elem>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        AdditiveSubset { members }
    }

    pub fn from_unsorted(mut members: Vec<Elem>) -> Self {
        members.sort_unstable();
        members.dedup();
        AdditiveSubset { members }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset_of(&self, other: &AdditiveSubset) -> bool {
        self.iter().all(|a| other.contains(a))
    }

    pub fn is_additive_subgroup(&self, ring: &FiniteRing) -> bool {
        self.contains(ring.zero())
            && self.iter().all(|a| {
                self.contains(ring.neg(a)) && self.iter().all(|b| self.contains(ring.add(a, b)))
            })
    }

    pub fn is_subring(&self, ring: &FiniteRing) -> bool {
        self.is_additive_subgroup(ring)
            && self.contains(ring.one())
            && self
                .iter()
                .all(|a| self.iter().all(|b| self.contains(ring.mul(a, b))))
    }

    pub fn contains_non_zero_divisor(&self, ring: &FiniteRing) -> bool {
        self.iter().any(|a| super::is_non_zero_divisor(ring, &a))
    }

    pub fn format(&self, ring: &FiniteRing) -> String {
        let parts: Vec<String> = self.iter().map(|a| ring.format_element(a)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}
