//! Quasipositive band representations for full subsurfaces of the fiber `S(q_n)`.
//!
//! After Whitehead reduction, every comb and isolated point of the graph is
//! thickened into its own 0-handle and every arc into a positive band joining
//! the 0-handles at its two ends. Parts are numbered disk by disk in list
//! order; bands are listed by the height of their fine 1-handle, then by slot.

use alloc::vec::Vec;

use crate::braid::{BandRepresentation, EmbeddedBand};
use crate::constructions::q_rep;
use crate::error::{Error, Result};
use crate::graph::{CombedGraph, DiskPart, Site, Tooth};
use crate::surface::{BraidedSurface, SurfaceSummary};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasipositizationResult {
    pub output: BandRepresentation,
    pub input_summary: SurfaceSummary,
    pub output_summary: SurfaceSummary,
    pub steps: Vec<Site>,
    pub reduced: CombedGraph,
}

/// Reads off a quasipositive representation of `N(G)` for a full graph `G` on `S(q_n)`.
pub fn quasipositize(n: usize, graph: &CombedGraph) -> Result<QuasipositizationResult> {
    let q = q_rep(n)?;
    let problems = graph.validate();
    if let Some(v) = problems.first() {
        return Err(Error::InvalidGraph(alloc::format!("{v}")));
    }
    if graph.host().rep() != &q {
        return Err(Error::NotOnQ(n));
    }
    if graph.has_free_ends() {
        return Err(Error::HasFreeEnds);
    }
    if graph.part_count() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let input_summary = graph.neighborhood_summary()?;
    let (reduced, steps) = graph.reduce_traced()?;

    // 0-handle index of every (handle, disk, slot) arc end
    let mut index = 0usize;
    let mut owner: Vec<((usize, usize, usize), usize)> = Vec::new();
    for (s, parts) in reduced.disks().iter().enumerate() {
        for part in parts {
            index += 1;
            if let DiskPart::Comb(teeth) = part {
                for tooth in teeth {
                    if let Tooth::ArcEnd { handle, slot } = *tooth {
                        owner.push(((handle, s + 1, slot), index));
                    }
                }
            }
        }
    }
    owner.sort_unstable();
    let find = |key: (usize, usize, usize)| owner[owner.binary_search_by_key(&key, |&(k, _)| k).expect("validated")].1;

    let mut bands = Vec::with_capacity(reduced.arc_count());
    for arc in reduced.arcs() {
        let b = reduced.host().band(arc.handle);
        let lo = find((arc.handle, b.i, arc.slot_i));
        let hi = find((arc.handle, b.j, arc.slot_j));
        bands.push(EmbeddedBand::positive(lo, hi));
    }
    let output = BandRepresentation::new(index, bands)?;
    let output_summary = BraidedSurface::new(output.clone()).summary();
    if output_summary != input_summary {
        return Err(Error::SummaryMismatch(alloc::format!("graph {input_summary}, output {output_summary}")));
    }
    Ok(QuasipositizationResult { output, input_summary, output_summary, steps, reduced })
}

/// [`quasipositize`] applied to the spine of the subsurface made of all disks
/// and the selected 1-handles of `S(q_n)`.
pub fn quasipositize_handle_subsurface(n: usize, selected: &[usize]) -> Result<QuasipositizationResult> {
    let spine = BraidedSurface::new(q_rep(n)?).handle_spine(selected)?;
    quasipositize(n, &spine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::Sign;
    use crate::constructions::verify_fiber;
    use crate::graph::Arc;
    use crate::invariants::alexander_from_braid;
    use crate::poly::LaurentPolynomial;
    use crate::surface::ComponentSummary;

    fn disk() -> ComponentSummary {
        ComponentSummary { chi: 1, boundary: 1 }
    }

    #[test]
    fn spine_of_q2() {
        let r = quasipositize_handle_subsurface(2, &[1, 2]).unwrap();
        assert!(r.output.is_quasipositive());
        assert_eq!(r.output_summary.components(), [ComponentSummary { chi: 0, boundary: 2 }]);
        let alex = alexander_from_braid(&r.output.beta()).unwrap();
        assert!(alex.eq_up_to_units(&LaurentPolynomial::from_coeffs(0, &[-1, 1])));
    }

    #[test]
    fn full_spine_returns_q() {
        for n in 2..=4 {
            let k = q_rep(n).unwrap().len();
            let all: Vec<usize> = (1..=k).collect();
            let r = quasipositize_handle_subsurface(n, &all).unwrap();
            assert_eq!(r.output, q_rep(n).unwrap());
            assert!(r.steps.is_empty());
        }
        let r = quasipositize_handle_subsurface(3, &(1..=8).collect::<Vec<_>>()).unwrap();
        assert_eq!(r.output_summary.components(), [ComponentSummary { chi: -3, boundary: 3 }]);
        let fiber = verify_fiber(3).unwrap();
        assert!(alexander_from_braid(&r.output.beta()).unwrap().eq_up_to_units(&fiber.alexander_nabla));
    }

    #[test]
    fn single_point() {
        let q = q_rep(3).unwrap();
        let mut disks = alloc::vec![Vec::new(); q.strands()];
        disks[0].push(DiskPart::Point);
        let g = CombedGraph::new(q, disks, Vec::new()).unwrap();
        let r = quasipositize(3, &g).unwrap();
        assert_eq!((r.output.strands(), r.output.len()), (1, 0));
        assert_eq!(r.output_summary.components(), [disk()]);
    }

    #[test]
    fn small_subsets() {
        let r = quasipositize_handle_subsurface(3, &[]).unwrap();
        assert_eq!(r.output_summary.components(), [disk(); 5]);
        let r = quasipositize_handle_subsurface(3, &[1]).unwrap();
        assert_eq!(r.output.bands(), [EmbeddedBand::positive(1, 5)]);
        assert_eq!(r.output_summary.components(), [disk(); 4]);
    }

    #[test]
    fn bigon_is_not_full() {
        let q = q_rep(2).unwrap();
        let comb = || alloc::vec![DiskPart::Comb(alloc::vec![
            Tooth::ArcEnd { handle: 1, slot: 1 },
            Tooth::ArcEnd { handle: 1, slot: 2 },
        ])];
        let arcs = alloc::vec![Arc { handle: 1, slot_i: 1, slot_j: 2 }, Arc { handle: 1, slot_i: 2, slot_j: 1 }];
        let g = CombedGraph::new(q, alloc::vec![comb(), comb()], arcs).unwrap();
        assert_eq!(quasipositize(2, &g).unwrap_err(), Error::NotFull);
    }

    #[test]
    fn rejects_other_hosts_and_free_ends() {
        let other = BandRepresentation::new(2, alloc::vec![EmbeddedBand::new(1, 2, Sign::Pos)]).unwrap();
        let g = BraidedSurface::new(other).handle_spine(&[1]).unwrap();
        assert_eq!(quasipositize(2, &g).unwrap_err(), Error::NotOnQ(2));

        let q = q_rep(2).unwrap();
        let disks = alloc::vec![alloc::vec![DiskPart::Comb(alloc::vec![Tooth::FreeEnd])], alloc::vec![DiskPart::Point]];
        let g = CombedGraph::new(q, disks, Vec::new()).unwrap();
        assert_eq!(quasipositize(2, &g).unwrap_err(), Error::HasFreeEnds);
    }

    #[test]
    fn reduction_before_readout() {
        // two parallel arcs through handle 1 of S(q_2), fanning out into one comb
        // on disk 1 and two separate combs on disk 2, plus the spine arc of handle 2
        let q = q_rep(2).unwrap();
        let disks = alloc::vec![
            alloc::vec![DiskPart::Comb(alloc::vec![
                Tooth::ArcEnd { handle: 1, slot: 1 },
                Tooth::ArcEnd { handle: 1, slot: 2 },
                Tooth::ArcEnd { handle: 2, slot: 1 },
            ])],
            alloc::vec![
                DiskPart::Comb(alloc::vec![Tooth::ArcEnd { handle: 1, slot: 1 }, Tooth::ArcEnd { handle: 2, slot: 1 }]),
                DiskPart::Comb(alloc::vec![Tooth::ArcEnd { handle: 1, slot: 2 }]),
            ],
        ];
        let arcs = alloc::vec![
            Arc { handle: 1, slot_i: 1, slot_j: 2 },
            Arc { handle: 1, slot_i: 2, slot_j: 1 },
            Arc { handle: 2, slot_i: 1, slot_j: 1 },
        ];
        let g = CombedGraph::new(q, disks, arcs).unwrap();
        assert!(g.is_full().unwrap());
        let r = quasipositize(2, &g).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.output_summary, g.neighborhood_summary().unwrap());
    }
}
