//! Temporal motifs, their anchors, and extension plans.
//!
//! A [`Motif`] is a directed pattern multigraph on 3 or 4 vertices whose edge
//! list is already in time order: position 0 must be matched first. The
//! window `delta` is supplied at query time.
//!
//! Counting works off an [`Anchor`]: a spanning wedge (3 vertices) or 3-path
//! (4 vertices) of the pattern that contains position 0. The anchor is
//! described as a *center* edge plus one or two *arms* hanging off its source
//! or destination; the arm directions and their time side relative to the
//! center give the sampling class. Every other pattern edge is filled in by
//! the [`ExtensionPlan`].

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type PatternVertex = u8;

/// How equal timestamps are treated when matching.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieMode {
    /// Timestamps must strictly increase along the motif order; edges with
    /// equal timestamps never match consecutive positions.
    #[default]
    Strict,
    /// Equal timestamps are allowed and ordered by global edge id (input
    /// order), so every match is a strictly increasing sequence of edge ids.
    Lenient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motif {
    num_vertices: usize,
    edges: Vec<(PatternVertex, PatternVertex)>,
}

impl Motif {
    pub fn new(edges: Vec<(PatternVertex, PatternVertex)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidMotif("no edges".into()));
        }
        if let Some(&(u, _)) = edges.iter().find(|(u, v)| u == v) {
            return Err(Error::InvalidMotif(format!("self-loop on pattern vertex {u}")));
        }
        let nv = edges.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0);
        if !(3..=4).contains(&nv) {
            return Err(Error::InvalidMotif(format!("motifs need 3 or 4 vertices, found {nv}")));
        }
        let mut used = [false; 4];
        for &(u, v) in &edges {
            used[u as usize] = true;
            used[v as usize] = true;
        }
        if let Some(gap) = (0..nv).find(|&v| !used[v]) {
            return Err(Error::InvalidMotif(format!("vertex label {gap} is never used")));
        }
        if !connected(nv, edges.iter().copied()) {
            return Err(Error::InvalidMotif("pattern is disconnected".into()));
        }
        Ok(Motif { num_vertices: nv, edges })
    }

    /// Parses `u v` lines (one pattern edge per line, in time order). `#`
    /// starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::InvalidMotif(format!("line {}: expected `u v`, got `{raw}`", i + 1));
            let mut it = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty());
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad());
            };
            let a: PatternVertex = a.parse().map_err(|_| bad())?;
            let b: PatternVertex = b.parse().map_err(|_| bad())?;
            if a > 3 || b > 3 {
                return Err(Error::InvalidMotif(format!("line {}: pattern vertex out of range", i + 1)));
            }
            edges.push((a, b));
        }
        Motif::new(edges)
    }

    pub fn preset(name: &str) -> Option<Self> {
        let edges = PRESETS.iter().find(|(n, _)| n.eq_ignore_ascii_case(name))?.1;
        Some(Motif::new(edges.to_vec()).expect("presets are valid"))
    }

    pub fn preset_names() -> impl Iterator<Item = &'static str> {
        PRESETS.iter().map(|(n, _)| *n)
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Pattern edges in time order.
    #[inline]
    pub fn edges(&self) -> &[(PatternVertex, PatternVertex)] {
        &self.edges
    }

    /// Number of pattern edges outside a spanning anchor: `|E| - |V| + 1`.
    pub fn extra_edges(&self) -> usize {
        self.edges.len() + 1 - self.num_vertices
    }
}

impl fmt::Display for Motif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}->{v}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Reads a motif file (see [`Motif::parse`]).
pub fn parse_motif(path: impl AsRef<Path>) -> Result<Motif> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    Motif::parse(&text)
}

/// The built-in motif catalogue. Edge lists are in time order.
pub const PRESETS: &[(&str, &[(PatternVertex, PatternVertex)])] = &[
    // cyclic triangle
    ("M3-0", &[(0, 1), (1, 2), (2, 0)]),
    // triangle with a reciprocated first pair
    ("M3-1", &[(0, 1), (1, 0), (1, 2), (2, 0)]),
    // 4-cycle
    ("M4-0", &[(0, 1), (1, 2), (2, 3), (3, 0)]),
    // back-and-forth chain A-B-C-D
    ("M4-1", &[(0, 1), (1, 2), (2, 3), (3, 2), (2, 1), (1, 0), (0, 1), (1, 2), (2, 3)]),
    // 4-cycle traversed twice
    ("M4-2", &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 1), (1, 2), (2, 3), (3, 0)]),
    // 4-cycle closed by a chord
    ("M4-3", &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
    // 4-cycle plus chord, every pair reciprocated
    ("M4-4", &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0), (0, 3), (0, 2), (2, 0)]),
    // tournament on 4 vertices
    ("M4-5", &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]),
];

fn connected(nv: usize, edges: impl Iterator<Item = (PatternVertex, PatternVertex)>) -> bool {
    let mut parent: [usize; 4] = [0, 1, 2, 3];
    fn find(p: &mut [usize; 4], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (1..nv).all(|v| find(&mut parent, v) == root)
}

// ---------------------------------------------------------------------------
// Sampling classes

/// Direction of an arm edge at the center vertex it hangs off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Arm edge points into the center vertex.
    In,
    /// Arm edge leaves the center vertex.
    Out,
}

/// Time side of an arm edge relative to the center edge timestamp `t`:
/// `Before` draws from `[t - delta, t]`, `After` from `[t, t + delta]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TimeSide {
    Before,
    After,
}

/// Which endpoint of the center edge an arm is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Src,
    Dst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArmSpec {
    pub dir: Direction,
    pub time: TimeSide,
}

impl ArmSpec {
    pub const ALL: [ArmSpec; 4] = [
        ArmSpec { dir: Direction::In, time: TimeSide::Before },
        ArmSpec { dir: Direction::In, time: TimeSide::After },
        ArmSpec { dir: Direction::Out, time: TimeSide::Before },
        ArmSpec { dir: Direction::Out, time: TimeSide::After },
    ];
}

/// Class of a time-windowed 3-path `(e1, e2, e3)` with center `e2 = (u, v, t)`:
/// `e1` is an arm at `u`, `e3` an arm at `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathClass {
    pub at_src: ArmSpec,
    pub at_dst: ArmSpec,
}

impl PathClass {
    pub fn all() -> impl Iterator<Item = PathClass> {
        ArmSpec::ALL
            .into_iter()
            .flat_map(|a| ArmSpec::ALL.into_iter().map(move |b| PathClass { at_src: a, at_dst: b }))
    }
}

/// Class of a time-windowed wedge: the base edge plus one spoke attached at
/// the base's `pivot` endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WedgeClass {
    pub pivot: End,
    pub spoke: ArmSpec,
}

impl WedgeClass {
    pub fn all() -> impl Iterator<Item = WedgeClass> {
        [End::Src, End::Dst]
            .into_iter()
            .flat_map(|p| ArmSpec::ALL.into_iter().map(move |s| WedgeClass { pivot: p, spoke: s }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SamplingClass {
    Path(PathClass),
    Wedge(WedgeClass),
}

impl SamplingClass {
    /// Arms in sampling order: `(endpoint of the center, spec)`.
    pub fn arms(&self) -> ([(End, ArmSpec); 2], usize) {
        match *self {
            SamplingClass::Path(c) => ([(End::Src, c.at_src), (End::Dst, c.at_dst)], 2),
            SamplingClass::Wedge(c) => ([(c.pivot, c.spoke), (c.pivot, c.spoke)], 1),
        }
    }

    pub fn all() -> impl Iterator<Item = SamplingClass> {
        PathClass::all()
            .map(SamplingClass::Path)
            .chain(WedgeClass::all().map(SamplingClass::Wedge))
    }
}

impl fmt::Display for ArmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dir {
            Direction::In => "in",
            Direction::Out => "out",
        };
        let t = match self.time {
            TimeSide::Before => "before",
            TimeSide::After => "after",
        };
        write!(f, "{d},{t}")
    }
}

impl fmt::Display for SamplingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplingClass::Path(c) => {
                let (a, b) = (c.at_src, c.at_dst);
                let dir = |d: Direction| if d == Direction::In { "in" } else { "out" };
                let side = |s: TimeSide| if s == TimeSide::Before { "before" } else { "after" };
                write!(f, "path<{},{},{},{}>", dir(a.dir), dir(b.dir), side(a.time), side(b.time))
            }
            SamplingClass::Wedge(c) => {
                let p = if c.pivot == End::Src { "src" } else { "dst" };
                write!(f, "wedge<{p}:{}>", c.spoke)
            }
        }
    }
}

impl FromStr for SamplingClass {
    type Err = Error;

    /// Accepts the `Display` forms, e.g. `path<in,out,before,after>` or
    /// `wedge<dst:out,after>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unrecognised class `{s}`"));
        let s = s.trim();
        let body = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix('>'));
        let dir = |x: &str| match x {
            "in" => Ok(Direction::In),
            "out" => Ok(Direction::Out),
            _ => Err(bad()),
        };
        let side = |x: &str| match x {
            "before" => Ok(TimeSide::Before),
            "after" => Ok(TimeSide::After),
            _ => Err(bad()),
        };
        if let Some(b) = body("path<") {
            let p: Vec<&str> = b.split(',').map(str::trim).collect();
            if p.len() != 4 {
                return Err(bad());
            }
            return Ok(SamplingClass::Path(PathClass {
                at_src: ArmSpec { dir: dir(p[0])?, time: side(p[2])? },
                at_dst: ArmSpec { dir: dir(p[1])?, time: side(p[3])? },
            }));
        }
        if let Some(b) = body("wedge<") {
            let (pivot, rest) = b.split_once(':').ok_or_else(bad)?;
            let pivot = match pivot {
                "src" => End::Src,
                "dst" => End::Dst,
                _ => return Err(bad()),
            };
            let (d, t) = rest.split_once(',').ok_or_else(bad)?;
            return Ok(SamplingClass::Wedge(WedgeClass {
                pivot,
                spoke: ArmSpec { dir: dir(d.trim())?, time: side(t.trim())? },
            }));
        }
        Err(bad())
    }
}

// ---------------------------------------------------------------------------
// Anchor

/// One anchor edge hanging off the center edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arm {
    /// Motif position of the arm edge.
    pub position: usize,
    /// Center endpoint the arm is attached to.
    pub at: End,
    /// Pattern vertex at the arm's far end.
    pub far: PatternVertex,
    pub spec: ArmSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    /// Anchor edge positions, ascending. Always starts with 0.
    pub positions: Vec<usize>,
    /// Position of the center edge (3-path) or base edge (wedge).
    pub center: usize,
    /// Pattern endpoints `(src, dst)` of the center edge.
    pub center_ends: (PatternVertex, PatternVertex),
    /// Path: `[arm at src, arm at dst]`. Wedge: `[spoke]`.
    pub arms: Vec<Arm>,
    pub class: SamplingClass,
}

impl Anchor {
    pub fn is_wedge(&self) -> bool {
        matches!(self.class, SamplingClass::Wedge(_))
    }

    pub fn contains(&self, position: usize) -> bool {
        self.positions.binary_search(&position).is_ok()
    }
}

/// Picks the spanning 3-path (4-vertex motifs) or wedge (3-vertex motifs)
/// containing position 0 whose sorted position tuple is lexicographically
/// smallest.
pub fn choose_anchor(motif: &Motif) -> Result<Anchor> {
    let m = motif.num_edges();
    match motif.num_vertices() {
        3 => (1..m)
            .find_map(|i| wedge_anchor(motif, 0, i))
            .ok_or(Error::NoAnchor { kind: "wedge" }),
        4 => (1..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find_map(|(i, j)| path_anchor(motif, [0, i, j]))
            .ok_or(Error::NoAnchor { kind: "3-path" }),
        _ => unreachable!("validated on construction"),
    }
}

fn arm_for(motif: &Motif, center: usize, position: usize, at: End) -> Arm {
    let (x, y) = motif.edges[center];
    let pivot = if at == End::Src { x } else { y };
    let (a, b) = motif.edges[position];
    let (dir, far) = if b == pivot { (Direction::In, a) } else { (Direction::Out, b) };
    let time = if position < center { TimeSide::Before } else { TimeSide::After };
    Arm { position, at, far, spec: ArmSpec { dir, time } }
}

fn wedge_anchor(motif: &Motif, base: usize, spoke: usize) -> Option<Anchor> {
    let (x, y) = motif.edges[base];
    let (a, b) = motif.edges[spoke];
    let shared: Vec<PatternVertex> = [a, b].into_iter().filter(|&v| v == x || v == y).collect();
    if shared.len() != 1 {
        return None;
    }
    let at = if shared[0] == x { End::Src } else { End::Dst };
    let arm = arm_for(motif, base, spoke, at);
    Some(Anchor {
        positions: vec![base, spoke],
        center: base,
        center_ends: (x, y),
        class: SamplingClass::Wedge(WedgeClass { pivot: at, spoke: arm.spec }),
        arms: vec![arm],
    })
}

fn path_anchor(motif: &Motif, positions: [usize; 3]) -> Option<Anchor> {
    let mut degree = [0u8; 4];
    for &p in &positions {
        let (u, v) = motif.edges[p];
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    if degree.iter().any(|&d| d == 0 || d > 2) {
        return None;
    }
    if !connected(4, positions.iter().map(|&p| motif.edges[p])) {
        return None;
    }
    let center = *positions.iter().find(|&&p| {
        let (u, v) = motif.edges[p];
        degree[u as usize] == 2 && degree[v as usize] == 2
    })?;
    let (x, y) = motif.edges[center];
    let touches = |p: usize, w: PatternVertex| motif.edges[p].0 == w || motif.edges[p].1 == w;
    let src_arm = *positions.iter().find(|&&p| p != center && touches(p, x))?;
    let dst_arm = *positions.iter().find(|&&p| p != center && touches(p, y))?;
    let arms = vec![arm_for(motif, center, src_arm, End::Src), arm_for(motif, center, dst_arm, End::Dst)];
    Some(Anchor {
        positions: positions.to_vec(),
        center,
        center_ends: (x, y),
        class: SamplingClass::Path(PathClass { at_src: arms[0].spec, at_dst: arms[1].spec }),
        arms,
    })
}

// ---------------------------------------------------------------------------
// Extension plan

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionStep {
    pub position: usize,
    pub ends: (PatternVertex, PatternVertex),
    /// Nearest anchor position below `position`.
    pub below: usize,
    /// Nearest anchor position above `position`, if any.
    pub above: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionPlan {
    pub steps: Vec<ExtensionStep>,
}

impl ExtensionPlan {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

pub fn build_extension_plan(motif: &Motif, anchor: &Anchor) -> ExtensionPlan {
    let steps = (0..motif.num_edges())
        .filter(|&p| !anchor.contains(p))
        .map(|p| {
            let below = *anchor.positions.iter().rev().find(|&&a| a < p).expect("position 0 is anchored");
            let above = anchor.positions.iter().copied().find(|&a| a > p);
            ExtensionStep { position: p, ends: motif.edges[p], below, above }
        })
        .collect();
    ExtensionPlan { steps }
}
