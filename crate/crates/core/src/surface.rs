//! The braided surface `S(b)` as a handle complex.
//!
//! 0-handle `s` is the disk over strand `s`; 1-handle `t` is the `t`-th band of
//! the representation, attached at height `t` with a half-twist of the band's
//! sign. Nothing else about the embedding is stored.

use alloc::vec::Vec;
use core::fmt;

use crate::braid::{BandRepresentation, EmbeddedBand};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::{Arc, CombedGraph, DiskPart, Tooth};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidedSurface {
    rep: BandRepresentation,
}

impl BraidedSurface {
    pub fn new(rep: BandRepresentation) -> Self {
        Self { rep }
    }

    pub fn rep(&self) -> &BandRepresentation {
        &self.rep
    }

    /// Number of 0-handles.
    pub fn disks(&self) -> usize {
        self.rep.strands()
    }

    /// Number of 1-handles.
    pub fn handles(&self) -> usize {
        self.rep.len()
    }

    /// 1-handle `t` (1-based).
    pub fn band(&self, t: usize) -> EmbeddedBand {
        self.rep.bands()[t - 1]
    }

    /// χ = #0-handles − #1-handles.
    pub fn euler_characteristic(&self) -> i64 {
        self.disks() as i64 - self.handles() as i64
    }

    /// Component label (0-based, dense) of each disk.
    pub fn disk_components(&self) -> (Vec<usize>, usize) {
        let mut dsu = Dsu::new(self.disks());
        for b in self.rep.bands() {
            dsu.union(b.i - 1, b.j - 1);
        }
        dsu.labels()
    }

    pub fn is_connected(&self) -> bool {
        self.disk_components().1 == 1
    }

    pub fn summary(&self) -> SurfaceSummary {
        let (label, count) = self.disk_components();
        let mut disks = alloc::vec![0i64; count];
        let mut bands = alloc::vec![0i64; count];
        let mut boundary = alloc::vec![0usize; count];
        for &c in &label {
            disks[c] += 1;
        }
        for b in self.rep.bands() {
            bands[label[b.i - 1]] += 1;
        }
        for cycle in self.rep.beta().permutation().cycles() {
            boundary[label[cycle[0] - 1]] += 1;
        }
        SurfaceSummary::from_components(
            (0..count).map(|c| ComponentSummary { chi: disks[c] - bands[c], boundary: boundary[c] }),
        )
    }

    /// The combed spine of the subsurface made of every disk and the selected
    /// bands: one comb per disk with a tooth for each selected band touching it
    /// (in height order), an isolated point on untouched disks, one arc per
    /// selected band.
    pub fn handle_spine(&self, selected: &[usize]) -> Result<CombedGraph> {
        let disks: Vec<usize> = (1..=self.disks()).collect();
        self.spine_on(selected, &disks)
    }

    /// Like [`handle_spine`](Self::handle_spine) but only the listed disks are
    /// kept; every selected band must join two listed disks.
    pub(crate) fn spine_on(&self, selected: &[usize], keep: &[usize]) -> Result<CombedGraph> {
        let k = self.handles();
        let mut chosen = alloc::vec![false; k + 1];
        for &t in selected {
            if t == 0 || t > k {
                return Err(Error::InvalidParameter(alloc::format!("1-handle {t} out of range 1..={k}")));
            }
            chosen[t] = true;
        }
        let mut kept = alloc::vec![false; self.disks() + 1];
        for &s in keep {
            kept[s] = true;
        }
        let mut teeth: Vec<Vec<Tooth>> = alloc::vec![Vec::new(); self.disks()];
        let mut arcs = Vec::new();
        for t in (1..=k).filter(|&t| chosen[t]) {
            let b = self.band(t);
            if !kept[b.i] || !kept[b.j] {
                return Err(Error::InvalidParameter(alloc::format!("1-handle {t} leaves the kept disks")));
            }
            teeth[b.i - 1].push(Tooth::ArcEnd { handle: t, slot: 1 });
            teeth[b.j - 1].push(Tooth::ArcEnd { handle: t, slot: 1 });
            arcs.push(Arc { handle: t, slot_i: 1, slot_j: 1 });
        }
        let disks = teeth
            .into_iter()
            .enumerate()
            .map(|(s, teeth)| {
                if !kept[s + 1] {
                    Vec::new()
                } else if teeth.is_empty() {
                    alloc::vec![DiskPart::Point]
                } else {
                    alloc::vec![DiskPart::Comb(teeth)]
                }
            })
            .collect();
        CombedGraph::new(self.rep.clone(), disks, arcs)
    }
}

impl fmt::Display for BraidedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(")?;
        for (t, b) in self.rep.bands().iter().enumerate() {
            if t > 0 {
                f.write_str(", ")?;
            }
            let s = if b.sign.value() > 0 { "+" } else { "-" };
            write!(f, "({},{},{s})", b.i, b.j)?;
        }
        write!(f, ") in B{}", self.rep.strands())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentSummary {
    pub chi: i64,
    pub boundary: usize,
}

impl ComponentSummary {
    /// Orientable genus, if `(chi, boundary)` is realizable by a surface with boundary.
    pub fn genus(&self) -> Option<i64> {
        let twice = 2 - self.chi - self.boundary as i64;
        if self.boundary == 0 || twice < 0 || twice % 2 != 0 {
            None
        } else {
            Some(twice / 2)
        }
    }
}

/// Homeomorphism type of a compact orientable surface with boundary: the
/// multiset of `(χ, #boundary circles)` over its components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceSummary {
    total_chi: i64,
    components: Vec<ComponentSummary>,
}

impl SurfaceSummary {
    pub fn from_components(components: impl IntoIterator<Item = ComponentSummary>) -> Self {
        let mut components: Vec<ComponentSummary> = components.into_iter().collect();
        components.sort();
        let total_chi = components.iter().map(|c| c.chi).sum();
        Self { total_chi, components }
    }

    pub fn total_chi(&self) -> i64 {
        self.total_chi
    }

    /// Components sorted lexicographically by `(chi, boundary)`.
    pub fn components(&self) -> &[ComponentSummary] {
        &self.components
    }

    pub fn boundary_circles(&self) -> usize {
        self.components.iter().map(|c| c.boundary).sum()
    }

    /// Every component has χ ≤ 1, nonempty boundary and a whole genus.
    pub fn is_consistent(&self) -> bool {
        self.components.iter().all(|c| c.chi <= 1 && c.genus().is_some())
    }
}

impl fmt::Display for SurfaceSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi {} [", self.total_chi)?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", c.chi, c.boundary)?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::nabla;
    use alloc::vec;

    fn comp(chi: i64, boundary: usize) -> ComponentSummary {
        ComponentSummary { chi, boundary }
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(BraidedSurface::new(BandRepresentation::empty(1).unwrap()).euler_characteristic(), 1);
        assert_eq!(BraidedSurface::new(nabla(3).unwrap()).euler_characteristic(), -3);
    }

    #[test]
    fn summaries() {
        let two_disks = BraidedSurface::new(BandRepresentation::empty(2).unwrap()).summary();
        assert_eq!(two_disks.components(), &[comp(1, 1), comp(1, 1)]);

        let hopf = BandRepresentation::new(2, vec![EmbeddedBand::positive(1, 2); 2]).unwrap();
        assert_eq!(BraidedSurface::new(hopf).summary().components(), &[comp(0, 2)]);

        let fiber = BraidedSurface::new(nabla(3).unwrap()).summary();
        assert_eq!(fiber.components(), &[comp(-3, 3)]);
        assert_eq!(fiber.total_chi(), -3);
        assert!(fiber.is_consistent());
    }

    #[test]
    fn band_joining_components_lowers_count_and_chi() {
        let a = BraidedSurface::new(
            BandRepresentation::new(3, vec![EmbeddedBand::positive(1, 2), EmbeddedBand::positive(1, 2)]).unwrap(),
        );
        let b = BraidedSurface::new(
            BandRepresentation::new(
                3,
                vec![EmbeddedBand::positive(1, 2), EmbeddedBand::positive(1, 2), EmbeddedBand::positive(2, 3)],
            )
            .unwrap(),
        );
        assert_eq!(a.summary().components().len(), 2);
        assert_eq!(b.summary().components().len(), 1);
        assert_eq!(b.summary().total_chi(), a.summary().total_chi() - 1);
    }

    #[test]
    fn genus_rules() {
        assert_eq!(comp(1, 1).genus(), Some(0));
        assert_eq!(comp(-1, 1).genus(), Some(1));
        assert_eq!(comp(0, 1).genus(), None);
        assert_eq!(comp(2, 0).genus(), None);
    }

    #[test]
    fn spine_rejects_out_of_range_handles() {
        let s = BraidedSurface::new(nabla(2).unwrap());
        assert!(s.handle_spine(&[3]).is_err());
        assert!(s.handle_spine(&[0]).is_err());
    }
}
