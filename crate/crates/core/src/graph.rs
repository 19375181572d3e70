//! Combed graphs on braided surfaces.
//!
//! A combed graph meets each 0-handle in a disjoint union of combs and isolated
//! points, and each 1-handle in parallel copies of its core arc. That is all
//! the data kept here:
//!
//! - per disk, an ordered list of [`DiskPart`]s; a comb lists its teeth in
//!   increasing height along the attaching edge of the disk;
//! - per 1-handle `t`, `m_t` parallel arcs. Slots number the arc ends within
//!   each attaching arc from the bottom, separately on the `i(t)` and `j(t)`
//!   sides. The half-twist reverses transverse order, so slot `a` on one side
//!   is joined to slot `m_t + 1 − a` on the other.
//!
//! The regular neighbourhood `N(G)` is a ribbon graph: combs and points are
//! vertices, arcs are edges, and the cyclic order at a comb is its tooth order.
//! Boundary circles are counted by face tracing over that rotation system.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::braid::{BandRepresentation, Sign};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::surface::{BraidedSurface, ComponentSummary, SurfaceSummary};

/// Default cap on the number of simple cycles enumerated by [`CombedGraph::cycle_words`].
pub const DEFAULT_CYCLE_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tooth {
    /// End of an arc running through 1-handle `handle`, at `slot` of the attaching arc.
    ArcEnd { handle: usize, slot: usize },
    /// Endpoint of the graph on the boundary of the surface.
    FreeEnd,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DiskPart {
    Point,
    Comb(Vec<Tooth>),
}

/// One arc through `handle`, joining `slot_i` on the `i(t)` side to `slot_j` on the `j(t)` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub handle: usize,
    pub slot_i: usize,
    pub slot_j: usize,
}

/// Location of a Whitehead move: teeth `tooth` and `tooth + 1` of part `part`
/// in disk `disk` (all 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub disk: usize,
    pub part: usize,
    pub tooth: usize,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "disk {} part {} teeth {}/{}", self.disk, self.part, self.tooth, self.tooth + 1)
    }
}

/// A reduced word in the free group on co-tree 1-handles.
pub type HandleWord = Vec<(usize, Sign)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DiskCount { expected: usize, found: usize },
    EmptyComb { disk: usize, part: usize },
    HandleOutOfRange { disk: usize, handle: usize },
    HandleNotIncident { disk: usize, handle: usize },
    ArcHandleOutOfRange { handle: usize },
    SlotOutOfRange { disk: usize, handle: usize, slot: usize, arcs: usize },
    DuplicateSlot { disk: usize, handle: usize, slot: usize },
    MissingSlot { disk: usize, handle: usize, slot: usize },
    ArcSlotsNotBijective { handle: usize },
    ArcsNotParallel { handle: usize, slot_i: usize, slot_j: usize },
    TeethOutOfOrder { disk: usize, part: usize },
    CombsCross { disk: usize },
    CombsOutOfOrder { disk: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DiskCount { expected, found } => write!(f, "expected {expected} disks, found {found}"),
            EmptyComb { disk, part } => write!(f, "disk {disk} part {part}: comb without teeth"),
            HandleOutOfRange { disk, handle } => write!(f, "disk {disk}: tooth names unknown 1-handle {handle}"),
            HandleNotIncident { disk, handle } => write!(f, "disk {disk}: 1-handle {handle} is not attached here"),
            ArcHandleOutOfRange { handle } => write!(f, "arc through unknown 1-handle {handle}"),
            SlotOutOfRange { disk, handle, slot, arcs } => {
                write!(f, "disk {disk}: slot {slot} of 1-handle {handle}, which carries {arcs} arcs")
            }
            DuplicateSlot { disk, handle, slot } => write!(f, "disk {disk}: slot {slot} of 1-handle {handle} used twice"),
            MissingSlot { disk, handle, slot } => write!(f, "disk {disk}: slot {slot} of 1-handle {handle} has no tooth"),
            ArcSlotsNotBijective { handle } => write!(f, "1-handle {handle}: arc slots are not a bijection"),
            ArcsNotParallel { handle, slot_i, slot_j } => {
                write!(f, "1-handle {handle}: arc {slot_i}->{slot_j} is not order-reversing")
            }
            TeethOutOfOrder { disk, part } => write!(f, "disk {disk} part {part}: teeth out of vertical order"),
            CombsCross { disk } => write!(f, "disk {disk}: combs cross"),
            CombsOutOfOrder { disk } => write!(f, "disk {disk}: combs not listed in vertical order"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Side {
    I,
    J,
}

/// Vertical position of a tooth along a disk's attaching edge. Arc ends sit
/// inside the attaching arc of their handle; a free end sits in the gap next to
/// its neighbouring tooth in the comb.
type Key = (usize, usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombedGraph {
    host: BraidedSurface,
    disks: Vec<Vec<DiskPart>>,
    arcs: Vec<Arc>,
}

/// Abstract ribbon graph of `N(G)`.
struct Ribbon {
    /// (disk, part) of each vertex, 1-based disk and 0-based part.
    vertices: Vec<(usize, usize)>,
    /// Per vertex: arc-end teeth in rotation order, as (handle, side, slot).
    rotation: Vec<Vec<(usize, Side, usize)>>,
    /// Per arc: (handle, vertex at i side, vertex at j side).
    edges: Vec<(usize, usize, usize)>,
    /// (handle, side, slot) -> (vertex, position in rotation)
    ends: BTreeMap<(usize, Side, usize), (usize, usize)>,
}

impl CombedGraph {
    /// Builds and validates a graph on `S(host)`. Arcs are kept sorted by handle and `slot_i`.
    pub fn new(host: BandRepresentation, disks: Vec<Vec<DiskPart>>, arcs: Vec<Arc>) -> Result<Self> {
        let g = Self::from_parts_unchecked(host, disks, arcs);
        g.check()?;
        Ok(g)
    }

    /// Builds without validation; use [`validate`](Self::validate) to inspect the result.
    pub fn from_parts_unchecked(host: BandRepresentation, disks: Vec<Vec<DiskPart>>, mut arcs: Vec<Arc>) -> Self {
        arcs.sort();
        Self { host: BraidedSurface::new(host), disks, arcs }
    }

    pub fn host(&self) -> &BraidedSurface {
        &self.host
    }

    pub fn disks(&self) -> &[Vec<DiskPart>] {
        &self.disks
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Number of components of the 1-skeleton part `G ∩ ⋃ h1_t`.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn part_count(&self) -> usize {
        self.disks.iter().map(Vec::len).sum()
    }

    pub fn has_free_ends(&self) -> bool {
        self.teeth().any(|(_, _, t)| matches!(t, Tooth::FreeEnd))
    }

    fn teeth(&self) -> impl Iterator<Item = (usize, usize, &Tooth)> {
        self.disks.iter().enumerate().flat_map(|(s, parts)| {
            parts.iter().enumerate().flat_map(move |(p, part)| match part {
                DiskPart::Point => [].iter(),
                DiskPart::Comb(teeth) => teeth.iter(),
            }
            .map(move |t| (s + 1, p, t)))
        })
    }

    fn arcs_on(&self, handle: usize) -> usize {
        self.arcs.iter().filter(|a| a.handle == handle).count()
    }

    fn side(&self, disk: usize, handle: usize) -> Option<Side> {
        let b = self.host.band(handle);
        if b.i == disk {
            Some(Side::I)
        } else if b.j == disk {
            Some(Side::J)
        } else {
            None
        }
    }

    /// Position keys for each tooth of a comb, given the part index for tie-breaking.
    fn comb_keys(part: usize, teeth: &[Tooth]) -> Vec<Key> {
        let mut keys = Vec::with_capacity(teeth.len());
        for (k, tooth) in teeth.iter().enumerate() {
            let key = match *tooth {
                Tooth::ArcEnd { handle, slot } => (2 * handle, slot, 0, 0),
                Tooth::FreeEnd => {
                    let gap = match keys.last() {
                        Some(&(major, _, _, _)) if major % 2 == 0 => major + 1,
                        Some(&(major, _, _, _)) => major,
                        None => match teeth[k..].iter().find_map(|t| match t {
                            Tooth::ArcEnd { handle, .. } => Some(*handle),
                            Tooth::FreeEnd => None,
                        }) {
                            Some(h) => 2 * h - 1,
                            None => 0,
                        },
                    };
                    (gap, 0, part + 1, k + 1)
                }
            };
            keys.push(key);
        }
        keys
    }

    /// Every violated structural invariant; empty iff the graph is a valid combed graph.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.host.disks();
        let k = self.host.handles();
        if self.disks.len() != n {
            out.push(Violation::DiskCount { expected: n, found: self.disks.len() });
            return out;
        }

        let mut arcs_per = alloc::vec![0usize; k + 1];
        for a in &self.arcs {
            if a.handle == 0 || a.handle > k {
                out.push(Violation::ArcHandleOutOfRange { handle: a.handle });
            } else {
                arcs_per[a.handle] += 1;
            }
        }
        for (t, &m) in arcs_per.iter().enumerate().skip(1) {
            let mut seen_i = alloc::vec![false; m + 1];
            let mut seen_j = alloc::vec![false; m + 1];
            let mut bijective = true;
            for a in self.arcs.iter().filter(|a| a.handle == t) {
                for (slot, seen) in [(a.slot_i, &mut seen_i), (a.slot_j, &mut seen_j)] {
                    if slot == 0 || slot > m || seen[slot] {
                        bijective = false;
                    } else {
                        seen[slot] = true;
                    }
                }
                if a.slot_i + a.slot_j != m + 1 {
                    out.push(Violation::ArcsNotParallel { handle: t, slot_i: a.slot_i, slot_j: a.slot_j });
                }
            }
            if !bijective {
                out.push(Violation::ArcSlotsNotBijective { handle: t });
            }
        }

        // (handle, side) -> slots used by teeth
        let mut used: BTreeMap<(usize, Side), Vec<usize>> = BTreeMap::new();
        for (s, parts) in self.disks.iter().enumerate() {
            let disk = s + 1;
            let mut points: Vec<(Key, usize)> = Vec::new();
            let mut firsts: Vec<Key> = Vec::new();
            for (p, part) in parts.iter().enumerate() {
                let DiskPart::Comb(teeth) = part else { continue };
                if teeth.is_empty() {
                    out.push(Violation::EmptyComb { disk, part: p + 1 });
                    continue;
                }
                for tooth in teeth {
                    if let Tooth::ArcEnd { handle, slot } = *tooth {
                        if handle == 0 || handle > k {
                            out.push(Violation::HandleOutOfRange { disk, handle });
                            continue;
                        }
                        let Some(side) = self.side(disk, handle) else {
                            out.push(Violation::HandleNotIncident { disk, handle });
                            continue;
                        };
                        if slot == 0 || slot > arcs_per[handle] {
                            out.push(Violation::SlotOutOfRange { disk, handle, slot, arcs: arcs_per[handle] });
                            continue;
                        }
                        used.entry((handle, side)).or_default().push(slot);
                    }
                }
                let keys = Self::comb_keys(p, teeth);
                if keys.windows(2).any(|w| w[0] >= w[1]) {
                    out.push(Violation::TeethOutOfOrder { disk, part: p + 1 });
                }
                firsts.push(keys[0]);
                points.extend(keys.into_iter().map(|key| (key, p)));
            }
            if firsts.windows(2).any(|w| w[0] >= w[1]) {
                out.push(Violation::CombsOutOfOrder { disk });
            }
            points.sort();
            if !non_crossing(&points.iter().map(|&(_, p)| p).collect::<Vec<_>>()) {
                out.push(Violation::CombsCross { disk });
            }
        }
        for (t, &m) in arcs_per.iter().enumerate().skip(1) {
            let b = self.host.band(t);
            for (side, disk) in [(Side::I, b.i), (Side::J, b.j)] {
                let mut slots = used.remove(&(t, side)).unwrap_or_default();
                slots.sort_unstable();
                for w in slots.windows(2) {
                    if w[0] == w[1] {
                        out.push(Violation::DuplicateSlot { disk, handle: t, slot: w[0] });
                    }
                }
                for slot in 1..=m {
                    if slots.binary_search(&slot).is_err() {
                        out.push(Violation::MissingSlot { disk, handle: t, slot });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn check(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidGraph(alloc::format!("{v}"))),
        }
    }

    fn ribbon(&self) -> Ribbon {
        let mut vertices = Vec::new();
        let mut rotation = Vec::new();
        let mut ends = BTreeMap::new();
        for (s, parts) in self.disks.iter().enumerate() {
            for (p, part) in parts.iter().enumerate() {
                let v = vertices.len();
                vertices.push((s + 1, p));
                let mut rot = Vec::new();
                if let DiskPart::Comb(teeth) = part {
                    for tooth in teeth {
                        if let Tooth::ArcEnd { handle, slot } = *tooth {
                            let side = self.side(s + 1, handle).expect("validated incidence");
                            ends.insert((handle, side, slot), (v, rot.len()));
                            rot.push((handle, side, slot));
                        }
                    }
                }
                rotation.push(rot);
            }
        }
        let edges = self
            .arcs
            .iter()
            .map(|a| (a.handle, ends[&(a.handle, Side::I, a.slot_i)].0, ends[&(a.handle, Side::J, a.slot_j)].0))
            .collect();
        Ribbon { vertices, rotation, edges, ends }
    }

    /// Homeomorphism type of the regular neighbourhood `N(G)`.
    pub fn neighborhood_summary(&self) -> Result<SurfaceSummary> {
        self.check()?;
        let r = self.ribbon();
        let nv = r.vertices.len();
        let mut dsu = Dsu::new(nv);
        for &(_, u, v) in &r.edges {
            dsu.union(u, v);
        }
        let (label, count) = dsu.labels();
        let mut chi = alloc::vec![0i64; count];
        let mut faces = alloc::vec![0usize; count];
        for v in 0..nv {
            chi[label[v]] += 1;
            if r.rotation[v].is_empty() {
                faces[label[v]] += 1;
            }
        }
        for &(_, u, _) in &r.edges {
            chi[label[u]] -= 1;
        }

        // Face permutation: cross the arc, then step to the next tooth of the comb reached.
        let partner = |(h, side, slot): (usize, Side, usize)| {
            let m = self.arcs_on(h);
            match side {
                Side::I => (h, Side::J, m + 1 - slot),
                Side::J => (h, Side::I, m + 1 - slot),
            }
        };
        let mut seen: BTreeMap<(usize, Side, usize), ()> = BTreeMap::new();
        for (&start, &(v0, _)) in &r.ends {
            if seen.contains_key(&start) {
                continue;
            }
            faces[label[v0]] += 1;
            let mut e = start;
            while seen.insert(e, ()).is_none() {
                let (v, pos) = r.ends[&partner(e)];
                let rot = &r.rotation[v];
                e = rot[(pos + 1) % rot.len()];
            }
        }
        Ok(SurfaceSummary::from_components(
            (0..count).map(|c| ComponentSummary { chi: chi[c], boundary: faces[c] }),
        ))
    }

    /// Spanning forest of the host's handle graph, chosen greedily in band order.
    fn tree_handles(&self) -> Vec<bool> {
        let k = self.host.handles();
        let mut dsu = Dsu::new(self.host.disks());
        let mut tree = alloc::vec![false; k + 1];
        for (t, in_tree) in tree.iter_mut().enumerate().skip(1) {
            let b = self.host.band(t);
            *in_tree = dsu.union(b.i - 1, b.j - 1);
        }
        tree
    }

    /// Walks every simple cycle of the abstract graph, handing its word to `visit`.
    fn for_each_cycle_word(
        &self,
        budget: usize,
        mut visit: impl FnMut(HandleWord) -> ControlFlow<()>,
    ) -> Result<()> {
        self.check()?;
        let r = self.ribbon();
        let tree = self.tree_handles();
        let nv = r.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); nv];
        for (e, &(_, u, v)) in r.edges.iter().enumerate() {
            adj[u].push((e, v));
            adj[v].push((e, u));
        }

        struct Walk<'a, F> {
            adj: &'a [Vec<(usize, usize)>],
            edges: &'a [(usize, usize, usize)],
            tree: &'a [bool],
            on_path: Vec<bool>,
            path: Vec<(usize, usize)>,
            start: usize,
            found: usize,
            budget: usize,
            visit: F,
        }

        impl<F: FnMut(HandleWord) -> ControlFlow<()>> Walk<'_, F> {
            fn dfs(&mut self, x: usize) -> Result<ControlFlow<()>> {
                for idx in 0..self.adj[x].len() {
                    let (e, y) = self.adj[x][idx];
                    if self.path.last().is_some_and(|&(last, _)| last == e) {
                        continue;
                    }
                    if y == self.start {
                        let first = self.path.first().map_or(e, |&(f, _)| f);
                        if self.path.is_empty() || first >= e {
                            continue;
                        }
                        self.found += 1;
                        if self.found > self.budget {
                            return Err(Error::CycleEnumerationBudgetExceeded(self.budget));
                        }
                        self.path.push((e, x));
                        let word = self.word();
                        self.path.pop();
                        if (self.visit)(word).is_break() {
                            return Ok(ControlFlow::Break(()));
                        }
                    } else if y > self.start && !self.on_path[y] {
                        self.on_path[y] = true;
                        self.path.push((e, x));
                        let flow = self.dfs(y)?;
                        self.path.pop();
                        self.on_path[y] = false;
                        if flow.is_break() {
                            return Ok(flow);
                        }
                    }
                }
                Ok(ControlFlow::Continue(()))
            }

            fn word(&self) -> HandleWord {
                let mut w = Vec::new();
                for &(e, from) in &self.path {
                    let (h, u, _) = self.edges[e];
                    if self.tree[h] {
                        continue;
                    }
                    w.push((h, if from == u { Sign::Pos } else { Sign::Neg }));
                }
                cyclically_reduce(w)
            }
        }

        let mut walk = Walk {
            adj: &adj,
            edges: &r.edges,
            tree: &tree,
            on_path: alloc::vec![false; nv],
            path: Vec::new(),
            start: 0,
            found: 0,
            budget,
            visit: &mut visit,
        };
        for s in 0..nv {
            walk.start = s;
            walk.on_path[s] = true;
            let flow = walk.dfs(s)?;
            walk.on_path[s] = false;
            if flow.is_break() {
                break;
            }
        }
        Ok(())
    }

    /// Cyclically reduced word of every simple cycle, with the default budget.
    pub fn cycle_words(&self) -> Result<Vec<HandleWord>> {
        self.cycle_words_with_budget(DEFAULT_CYCLE_BUDGET)
    }

    pub fn cycle_words_with_budget(&self, budget: usize) -> Result<Vec<HandleWord>> {
        let mut out = Vec::new();
        self.for_each_cycle_word(budget, |w| {
            out.push(w);
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// No simple cycle of `G` bounds a disk on the host surface.
    pub fn is_full(&self) -> Result<bool> {
        self.is_full_with_budget(DEFAULT_CYCLE_BUDGET)
    }

    pub fn is_full_with_budget(&self, budget: usize) -> Result<bool> {
        let mut full = true;
        self.for_each_cycle_word(budget, |w| {
            if w.is_empty() {
                full = false;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(full)
    }

    /// Sites where two adjacent teeth of a comb run into adjacent slots of one
    /// attaching arc, in (disk, part, tooth) order.
    pub fn eligible_sites(&self) -> Vec<Site> {
        let mut out = Vec::new();
        for (s, parts) in self.disks.iter().enumerate() {
            for (p, part) in parts.iter().enumerate() {
                let DiskPart::Comb(teeth) = part else { continue };
                for (k, w) in teeth.windows(2).enumerate() {
                    if let [Tooth::ArcEnd { handle: h1, slot: a }, Tooth::ArcEnd { handle: h2, slot: b }] = *w {
                        if h1 == h2 && b == a + 1 {
                            out.push(Site { disk: s + 1, part: p + 1, tooth: k + 1 });
                        }
                    }
                }
            }
        }
        out
    }

    /// No comb has two arc ends in the same attaching arc.
    pub fn is_reduced(&self) -> bool {
        self.disks.iter().flatten().all(|part| match part {
            DiskPart::Point => true,
            DiskPart::Comb(teeth) => {
                let mut handles: Vec<usize> = teeth
                    .iter()
                    .filter_map(|t| match t {
                        Tooth::ArcEnd { handle, .. } => Some(*handle),
                        Tooth::FreeEnd => None,
                    })
                    .collect();
                let len = handles.len();
                handles.sort_unstable();
                handles.dedup();
                handles.len() == len
            }
        })
    }

    fn site_handle(&self, site: Site) -> Result<(usize, usize)> {
        let not = |why: &str| Error::SiteNotEligible(alloc::format!("{site}: {why}"));
        let part = self
            .disks
            .get(site.disk.wrapping_sub(1))
            .and_then(|d| d.get(site.part.wrapping_sub(1)))
            .ok_or_else(|| not("no such part"))?;
        let DiskPart::Comb(teeth) = part else { return Err(not("part is an isolated point")) };
        if site.tooth == 0 || site.tooth >= teeth.len() {
            return Err(not("no such pair of adjacent teeth"));
        }
        match (teeth[site.tooth - 1], teeth[site.tooth]) {
            (Tooth::ArcEnd { handle: h1, slot: a }, Tooth::ArcEnd { handle: h2, slot: b }) => {
                if h1 != h2 {
                    Err(not("teeth run into different 1-handles"))
                } else if b != a + 1 {
                    Err(not("slots are not adjacent"))
                } else {
                    Ok((h1, a))
                }
            }
            _ => Err(not("a tooth is a free end")),
        }
    }

    /// One Whitehead move: the two arcs at `site` are slid together into one,
    /// their far ends fused into a single tooth (merging the far combs).
    pub fn whitehead_step(&self, site: Site) -> Result<CombedGraph> {
        self.check()?;
        self.site_handle(site)?;
        if !self.is_full()? {
            return Err(Error::NotFull);
        }
        self.apply_whitehead(site)
    }

    fn apply_whitehead(&self, site: Site) -> Result<CombedGraph> {
        let (handle, a) = self.site_handle(site)?;
        let m = self.arcs_on(handle);
        let band = self.host.band(handle);
        let far_disk = if band.i == site.disk { band.j } else { band.i };
        // near slots a, a+1 pair with far slots m+1-a, m-a
        let (far_keep, far_drop) = (m - a, m + 1 - a);

        let find_far = |slot: usize| {
            self.disks[far_disk - 1].iter().position(|part| match part {
                DiskPart::Comb(teeth) => teeth.contains(&Tooth::ArcEnd { handle, slot }),
                DiskPart::Point => false,
            })
        };
        let keep_part = find_far(far_keep).expect("validated slots");
        let drop_part = find_far(far_drop).expect("validated slots");
        if keep_part == drop_part {
            return Err(Error::SiteNotEligible(alloc::format!(
                "{site}: both far ends lie on one comb (graph is not full)"
            )));
        }

        let renumber = |teeth: &mut Vec<Tooth>, gone: usize| {
            for tooth in teeth.iter_mut() {
                if let Tooth::ArcEnd { handle: h, slot } = tooth {
                    if *h == handle && *slot > gone {
                        *slot -= 1;
                    }
                }
            }
        };

        let mut disks = self.disks.clone();

        // near side: drop the upper tooth of the pair
        {
            let near = &mut disks[site.disk - 1];
            if let DiskPart::Comb(teeth) = &mut near[site.part - 1] {
                teeth.remove(site.tooth);
            }
            for part in near.iter_mut() {
                if let DiskPart::Comb(teeth) = part {
                    renumber(teeth, a + 1);
                }
            }
        }

        // far side: merge the two combs, fusing the two arc ends
        {
            let far = &mut disks[far_disk - 1];
            let teeth_of = |p: usize| match &far[p] {
                DiskPart::Comb(t) => t.clone(),
                DiskPart::Point => Vec::new(),
            };
            let (ta, tb) = (teeth_of(keep_part), teeth_of(drop_part));
            let mut keyed: Vec<(Key, Tooth)> = Self::comb_keys(keep_part, &ta)
                .into_iter()
                .zip(ta)
                .chain(Self::comb_keys(drop_part, &tb).into_iter().zip(tb))
                .filter(|(_, t)| *t != Tooth::ArcEnd { handle, slot: far_drop })
                .collect();
            keyed.sort();
            let merged: Vec<Tooth> = keyed.into_iter().map(|(_, t)| t).collect();
            far[keep_part] = DiskPart::Comb(merged);
            far.remove(drop_part);
            for part in far.iter_mut() {
                if let DiskPart::Comb(teeth) = part {
                    renumber(teeth, far_drop);
                }
            }
            sort_combs(far);
        }

        let mut arcs: Vec<Arc> = self.arcs.iter().copied().filter(|x| x.handle != handle).collect();
        arcs.extend((1..m).map(|x| Arc { handle, slot_i: x, slot_j: m - x }));
        CombedGraph::new(self.host.rep().clone(), disks, arcs)
    }

    /// Inverse of [`whitehead_step`](Self::whitehead_step). The arc ending at tooth
    /// `tooth` of part `part` in `disk` is doubled: the near comb gets a second
    /// tooth right above the old one, and the far comb is split so that the new
    /// far end, together with the `below` teeth directly under the old far end,
    /// forms a comb of its own.
    pub fn whitehead_split(&self, disk: usize, part: usize, tooth: usize, below: usize) -> Result<CombedGraph> {
        self.check()?;
        let bad = |why: &str| Error::InvalidParameter(alloc::format!("split at disk {disk} part {part} tooth {tooth}: {why}"));
        let teeth = match self.disks.get(disk.wrapping_sub(1)).and_then(|d| d.get(part.wrapping_sub(1))) {
            Some(DiskPart::Comb(t)) => t,
            _ => return Err(bad("no such comb")),
        };
        let Some(&Tooth::ArcEnd { handle, slot: a }) = teeth.get(tooth.wrapping_sub(1)) else {
            return Err(bad("not an arc end"));
        };
        let m = self.arcs_on(handle);
        let band = self.host.band(handle);
        let far_disk = if band.i == disk { band.j } else { band.i };
        let f = m + 1 - a;
        let old_far = Tooth::ArcEnd { handle, slot: f };
        let (fp, fpos) = self.disks[far_disk - 1]
            .iter()
            .enumerate()
            .find_map(|(k, p)| match p {
                DiskPart::Comb(t) => t.iter().position(|x| *x == old_far).map(|pos| (k, pos)),
                DiskPart::Point => None,
            })
            .expect("validated slots");
        if below > fpos {
            return Err(bad("not enough teeth below the far end"));
        }
        let bump = |teeth: &mut Vec<Tooth>, from: usize| {
            for x in teeth.iter_mut() {
                if let Tooth::ArcEnd { handle: h, slot } = x {
                    if *h == handle && *slot >= from {
                        *slot += 1;
                    }
                }
            }
        };
        let mut disks = self.disks.clone();
        for p in disks[disk - 1].iter_mut() {
            if let DiskPart::Comb(t) = p {
                bump(t, a + 1);
            }
        }
        if let DiskPart::Comb(t) = &mut disks[disk - 1][part - 1] {
            t.insert(tooth, Tooth::ArcEnd { handle, slot: a + 1 });
        }
        let far = &mut disks[far_disk - 1];
        for p in far.iter_mut() {
            if let DiskPart::Comb(t) = p {
                bump(t, f);
            }
        }
        let DiskPart::Comb(old) = far[fp].clone() else { unreachable!() };
        let mut split: Vec<Tooth> = old[fpos - below..fpos].to_vec();
        split.push(Tooth::ArcEnd { handle, slot: f });
        let rest: Vec<Tooth> = old[..fpos - below].iter().chain(&old[fpos..]).copied().collect();
        far[fp] = DiskPart::Comb(rest);
        far.push(DiskPart::Comb(split));
        sort_combs(far);
        let mut arcs: Vec<Arc> = self.arcs.iter().copied().filter(|x| x.handle != handle).collect();
        arcs.extend((1..=m + 1).map(|x| Arc { handle, slot_i: x, slot_j: m + 2 - x }));
        CombedGraph::new(self.host.rep().clone(), disks, arcs)
    }

    /// Applies Whitehead moves at the least eligible site until none remains.
    pub fn reduce(&self) -> Result<CombedGraph> {
        Ok(self.reduce_traced()?.0)
    }

    /// [`reduce`](Self::reduce), also returning the sites used, in order.
    pub fn reduce_traced(&self) -> Result<(CombedGraph, Vec<Site>)> {
        self.check()?;
        if !self.is_full()? {
            return Err(Error::NotFull);
        }
        let mut g = self.clone();
        let mut trace = Vec::new();
        while let Some(&site) = g.eligible_sites().first() {
            g = g.apply_whitehead(site)?;
            trace.push(site);
        }
        Ok((g, trace))
    }
}

/// Re-sorts the combs of a disk by their lowest tooth, leaving isolated points in place.
fn sort_combs(parts: &mut [DiskPart]) {
    let slots: Vec<usize> =
        parts.iter().enumerate().filter(|(_, p)| matches!(p, DiskPart::Comb(_))).map(|(k, _)| k).collect();
    let mut combs: Vec<(Key, DiskPart)> = slots
        .iter()
        .map(|&k| match &parts[k] {
            DiskPart::Comb(t) => (CombedGraph::comb_keys(k, t)[0], parts[k].clone()),
            DiskPart::Point => unreachable!(),
        })
        .collect();
    combs.sort_by_key(|x| x.0);
    for (k, (_, part)) in slots.into_iter().zip(combs) {
        parts[k] = part;
    }
}

/// Whether the blocks labelled along a line form a non-crossing partition.
fn non_crossing(labels: &[usize]) -> bool {
    let mut last: BTreeMap<usize, usize> = BTreeMap::new();
    for (pos, &l) in labels.iter().enumerate() {
        last.insert(l, pos);
    }
    let mut open: Vec<usize> = Vec::new();
    let mut started: BTreeMap<usize, ()> = BTreeMap::new();
    for (pos, &l) in labels.iter().enumerate() {
        if started.insert(l, ()).is_none() {
            if last[&l] > pos {
                open.push(l);
            }
        } else {
            if open.last() != Some(&l) {
                return false;
            }
            if last[&l] == pos {
                open.pop();
            }
        }
    }
    true
}

/// Free reduction followed by cyclic reduction.
pub fn cyclically_reduce(word: HandleWord) -> HandleWord {
    let mut stack: Vec<(usize, Sign)> = Vec::with_capacity(word.len());
    for x in word {
        match stack.last() {
            Some(&(h, s)) if h == x.0 && s != x.1 => {
                stack.pop();
            }
            _ => stack.push(x),
        }
    }
    let mut lo = 0;
    let mut hi = stack.len();
    while hi - lo >= 2 && stack[lo].0 == stack[hi - 1].0 && stack[lo].1 != stack[hi - 1].1 {
        lo += 1;
        hi -= 1;
    }
    stack[lo..hi].to_vec()
}

impl fmt::Display for CombedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph on {}", self.host)?;
        for (s, parts) in self.disks.iter().enumerate() {
            let mut line = String::new();
            for part in parts {
                match part {
                    DiskPart::Point => line.push_str(" ."),
                    DiskPart::Comb(teeth) => {
                        line.push_str(" [");
                        for (k, t) in teeth.iter().enumerate() {
                            if k > 0 {
                                line.push(' ');
                            }
                            match t {
                                Tooth::ArcEnd { handle, slot } => line.push_str(&alloc::format!("{handle}.{slot}")),
                                Tooth::FreeEnd => line.push('*'),
                            }
                        }
                        line.push(']');
                    }
                }
            }
            writeln!(f, "  disk {}:{}", s + 1, line)?;
        }
        write!(f, "  arcs: {}", self.arcs.len())
    }
}
