//! Piece complexes for the circle-action decompositions of the 4-sphere.
//!
//! The closed decomposition has five pieces: two 4-balls around the fixed
//! points, one solid-torus bundle over each branch arc, and the free part
//! `X x S^1` over the 1-knot complement.  Removing the neighborhood of
//! one of the two singular 2-knots leaves the two-piece complement
//! decomposition.  Gluing data lives on edges as 2x2 unimodular matrices
//! in the cycle bases of [`crate::gluing`].
//!
//! The Gluck twist acts on a closed complex by right-multiplying the
//! branch edges by the twist matrix (site `First`, along the knot itself)
//! or by the twist matrix followed by the disk-slot exchange `U` (site
//! `Second`, along the twin partner), then renormalizing orientation and
//! framing.  The rewritten complex coincides, piece by piece and matrix
//! by matrix, with the complex built directly from the rewritten orbit
//! data; that agreement is the index-rewrite theorem at the matrix level
//! and is what the acceptance suite checks.
//!
//! Fundamental groups are extracted mechanically: free product of the
//! piece groups, one identification relator per boundary cycle of each
//! branch edge, one kill relator per filled disk, and elimination of the
//! branch core generators (each occurs in exactly one relator).  Ball
//! pieces contribute nothing.  The bundle interval direction carries no
//! cycle, so no longitude relator arises in the complement.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::fpgroup::{AbelianInvariants, GroupError, GroupPresentation, Word};
use crate::gluing::{g_matrix, GluingError, Mat2, GLUCK, U};
use crate::orbitdata::{BTSIndex, OrbitError, Site};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("knot presentation is missing its {0} word")]
    MissingPeripheral(&'static str),
    #[error("operation requires a closed complex")]
    WrongLabel,
    #[error("complex is not connected")]
    DisconnectedComplex,
    #[error("the twist degenerates to the spun knot; no complex rewrite exists")]
    SpunKnotDegenerate,
    #[error(transparent)]
    Index(#[from] OrbitError),
    #[error(transparent)]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Which branch arc a solid-torus bundle lies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcLabel {
    Em,
    En,
}

impl fmt::Display for ArcLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcLabel::Em => write!(f, "Em"),
            ArcLabel::En => write!(f, "En"),
        }
    }
}

/// Boundary cycle labels: `(c_theta, c_h)` on the free part,
/// `(c_theta1, c_theta2)` on a branch torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleLabel {
    CTheta,
    CH,
    CTheta1,
    CTheta2,
}

impl fmt::Display for CycleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleLabel::CTheta => write!(f, "c_theta"),
            CycleLabel::CH => write!(f, "c_h"),
            CycleLabel::CTheta1 => write!(f, "c_theta1"),
            CycleLabel::CTheta2 => write!(f, "c_theta2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceKind {
    Ball4,
    TorusBundle { order: i64, arc: ArcLabel },
    FreePart,
}

/// One piece of a decomposition: its kind, fundamental group, and the
/// words its boundary cycles map to in that group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub kind: PieceKind,
    pub presentation: GroupPresentation,
    pub boundary_cycles: BTreeMap<CycleLabel, Word>,
}

impl Piece {
    fn ball() -> Piece {
        Piece {
            kind: PieceKind::Ball4,
            presentation: GroupPresentation::new(vec![]),
            boundary_cycles: BTreeMap::new(),
        }
    }

    /// Solid-torus bundle over a branch arc.  One generator (the core
    /// circle); the disk-bounding cycle maps to the empty word and the
    /// other cycle to the core.
    fn torus_bundle(order: i64, arc: ArcLabel) -> Piece {
        let (core_name, disk_cycle, core_cycle) = match arc {
            ArcLabel::Em => ("a", CycleLabel::CTheta1, CycleLabel::CTheta2),
            ArcLabel::En => ("b", CycleLabel::CTheta2, CycleLabel::CTheta1),
        };
        let presentation = GroupPresentation::new(vec![core_name.into()]);
        let mut boundary_cycles = BTreeMap::new();
        boundary_cycles.insert(disk_cycle, Word::empty());
        boundary_cycles.insert(core_cycle, Word::generator(0));
        Piece {
            kind: PieceKind::TorusBundle { order, arc },
            presentation,
            boundary_cycles,
        }
    }

    /// The free part `X x S^1`: the knot group with an adjoined central
    /// circle generator, meridian on `c_theta` and the circle on `c_h`.
    fn free_part(knot: &GroupPresentation) -> Result<Piece, AssemblyError> {
        let meridian = knot
            .meridian()
            .ok_or(AssemblyError::MissingPeripheral("meridian"))?
            .clone();
        if knot.longitude().is_none() {
            return Err(AssemblyError::MissingPeripheral("longitude"));
        }
        let (presentation, h) = knot.adjoin_central_generator();
        let mut boundary_cycles = BTreeMap::new();
        boundary_cycles.insert(CycleLabel::CTheta, meridian);
        boundary_cycles.insert(CycleLabel::CH, Word::generator(h));
        Ok(Piece {
            kind: PieceKind::FreePart,
            presentation,
            boundary_cycles,
        })
    }

    pub fn order(&self) -> Option<i64> {
        match self.kind {
            PieceKind::TorusBundle { order, .. } => Some(order),
            _ => None,
        }
    }
}

/// A gluing edge: the matrix sends the source cycles `(c_theta1,
/// c_theta2)` to the target basis `(c_theta, c_h)` column by column.
/// `filled_disk_cycle` names the cycle whose image bounds a disk in the
/// attached piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingEdge {
    pub from: usize,
    pub to: usize,
    pub matrix: Mat2,
    pub filled_disk_cycle: Option<CycleLabel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexLabel {
    ClosedS4,
    Complement { m: i64, n: i64 },
    GluckResult { site: Site },
}

/// A decomposition: pieces plus matrix-labelled gluing edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceComplex {
    pub label: ComplexLabel,
    pub pieces: Vec<Piece>,
    pub edges: Vec<GluingEdge>,
}

impl PieceComplex {
    /// Recovers the index pair from the order-`m` branch edge; the top
    /// row of the gluing matrix is `(em, -en)`.
    pub fn indices(&self) -> Option<(i64, i64)> {
        if let ComplexLabel::Complement { m, n } = self.label {
            return Some((m, n));
        }
        let edge = self.branch_edge(ArcLabel::Em)?;
        let e = if edge.matrix.b < 0 { 1 } else { -1 };
        Some((e * edge.matrix.a, (e * -edge.matrix.b).abs()))
    }

    fn branch_edge(&self, arc: ArcLabel) -> Option<&GluingEdge> {
        self.edges.iter().find(|e| {
            matches!(
                self.pieces[e.from].kind,
                PieceKind::TorusBundle { arc: a, .. } if a == arc
            )
        })
    }

    fn is_connected(&self) -> bool {
        if self.pieces.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.pieces.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(p) = stack.pop() {
            for e in &self.edges {
                for (x, y) in [(e.from, e.to), (e.to, e.from)] {
                    if x == p && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// The five-piece closed decomposition for orbit data `{K, m, n}`.
pub fn build_closed_complex(
    knot: &GroupPresentation,
    m: i64,
    n: i64,
) -> Result<PieceComplex, AssemblyError> {
    BTSIndex::new(m, n)?;
    let g = g_matrix(m, n)?;
    let pieces = vec![
        Piece::ball(),
        Piece::ball(),
        Piece::torus_bundle(m.abs(), ArcLabel::Em),
        Piece::torus_bundle(n, ArcLabel::En),
        Piece::free_part(knot)?,
    ];
    // Both branch edges carry the same matrix: the two branch gluings
    // agree entry for entry once coordinates are fixed by one circle
    // action, so equality is built in here.
    let edges = vec![
        GluingEdge {
            from: 2,
            to: 4,
            matrix: g,
            filled_disk_cycle: Some(CycleLabel::CTheta1),
        },
        GluingEdge {
            from: 3,
            to: 4,
            matrix: g,
            filled_disk_cycle: Some(CycleLabel::CTheta2),
        },
        GluingEdge {
            from: 0,
            to: 2,
            matrix: Mat2::IDENTITY,
            filled_disk_cycle: None,
        },
        GluingEdge {
            from: 0,
            to: 3,
            matrix: Mat2::IDENTITY,
            filled_disk_cycle: None,
        },
        GluingEdge {
            from: 1,
            to: 2,
            matrix: Mat2::IDENTITY,
            filled_disk_cycle: None,
        },
        GluingEdge {
            from: 1,
            to: 3,
            matrix: Mat2::IDENTITY,
            filled_disk_cycle: None,
        },
    ];
    Ok(PieceComplex {
        label: ComplexLabel::ClosedS4,
        pieces,
        edges,
    })
}

/// The two-piece complement decomposition: the order-`m` branch bundle
/// glued to the free part, with the disk filled along `c_theta1`.
pub fn build_complement_complex(
    knot: &GroupPresentation,
    m: i64,
    n: i64,
) -> Result<PieceComplex, AssemblyError> {
    BTSIndex::new(m, n)?;
    let g = g_matrix(m, n)?;
    let pieces = vec![
        Piece::torus_bundle(m.abs(), ArcLabel::Em),
        Piece::free_part(knot)?,
    ];
    let edges = vec![GluingEdge {
        from: 0,
        to: 1,
        matrix: g,
        filled_disk_cycle: Some(CycleLabel::CTheta1),
    }];
    Ok(PieceComplex {
        label: ComplexLabel::Complement { m, n },
        pieces,
        edges,
    })
}

/// Reframes the free-part trivialization so the bottom-left entry lands
/// in the canonical window `[0, |top-left|)`; a left multiplication by a
/// lower-unipotent matrix, which is the allowed change of section of
/// `X x S^1`.
fn retrivialize(m: Mat2) -> Mat2 {
    if m.a != 0 {
        let c = m.c.rem_euclid(m.a.abs());
        let t = (c - m.c) / m.a;
        Mat2::new(m.a, m.b, c, m.d + t * m.b)
    } else {
        let d = m.d.rem_euclid(m.b.abs());
        let t = (d - m.d) / m.b;
        Mat2::new(m.a, m.b, m.c + t * m.a, d)
    }
}

/// Performs the Gluck twist along one of the two singular 2-knots of a
/// closed complex and returns the rewritten complex in standard form.
///
/// Site `First` twists along the 2-knot of the second type (the one whose
/// neighborhood contains the order-`n` branch); site `Second` twists
/// along the twin partner (neighborhood contains the order-`m` branch).
/// Each branch edge is right-multiplied by the twist matrix, for site
/// `Second` followed by the disk-slot exchange, then orientation- and
/// framing-normalized.  Piece orders are read back off the rewritten
/// matrix, not recomputed from index arithmetic.
pub fn apply_gluck(complex: &PieceComplex, site: Site) -> Result<PieceComplex, AssemblyError> {
    if complex.label != ComplexLabel::ClosedS4 {
        return Err(AssemblyError::WrongLabel);
    }
    let (m, n) = complex.indices().ok_or(AssemblyError::WrongLabel)?;
    if m + n == 0 {
        return Err(AssemblyError::SpunKnotDegenerate);
    }
    let transform = match site {
        Site::First => GLUCK,
        Site::Second => GLUCK * U,
    };
    let mut out = complex.clone();
    out.label = ComplexLabel::GluckResult { site };
    let mut new_matrix = None;
    for edge in &mut out.edges {
        if !matches!(out.pieces[edge.from].kind, PieceKind::TorusBundle { .. }) {
            continue;
        }
        edge.matrix = retrivialize((edge.matrix * transform).normalize_sign());
        new_matrix = Some(edge.matrix);
    }
    let rewritten = new_matrix.ok_or(AssemblyError::WrongLabel)?;
    // The replaced branch takes the new order: |m+n| shows up as the
    // top-left entry (site Second) or minus the top-right entry (First).
    for piece in &mut out.pieces {
        if let PieceKind::TorusBundle { order, arc } = &mut piece.kind {
            match (site, *arc) {
                (Site::Second, ArcLabel::Em) => *order = rewritten.a,
                (Site::First, ArcLabel::En) => *order = rewritten.b.abs(),
                _ => {}
            }
        }
    }
    Ok(out)
}

fn piece_signature(p: &Piece) -> (u8, i64, u8) {
    match p.kind {
        PieceKind::Ball4 => (0, 0, 0),
        PieceKind::TorusBundle { order, arc } => (1, order, arc as u8),
        PieceKind::FreePart => (2, 0, 0),
    }
}

/// Strict decidable isomorphism: equal piece multisets (kind, order,
/// arc) and equal edge multisets of sign-normalized matrices between the
/// same piece kinds.
pub fn complexes_isomorphic(left: &PieceComplex, right: &PieceComplex) -> bool {
    let sigs = |c: &PieceComplex| {
        let mut pieces: Vec<_> = c.pieces.iter().map(piece_signature).collect();
        pieces.sort_unstable();
        let mut edges: Vec<_> = c
            .edges
            .iter()
            .map(|e| {
                let m = e.matrix.normalize_sign();
                (
                    piece_signature(&c.pieces[e.from]),
                    piece_signature(&c.pieces[e.to]),
                    (m.a, m.b, m.c, m.d),
                    e.filled_disk_cycle,
                )
            })
            .collect();
        edges.sort_unstable();
        (pieces, edges)
    };
    sigs(left) == sigs(right)
}

/// Mechanical fundamental-group extraction.
///
/// Free product of the piece groups; for every branch edge one
/// identification relator per boundary cycle (images computed through
/// the edge matrix in the `(c_theta, c_h)` basis) and a kill relator for
/// the filled disk; branch core generators, which occur in exactly one
/// relator, are eliminated together with their defining relator.
///
/// For a complement complex the output's distinguished meridian is the
/// meridian of the 2-knot: the image of the branch core cycle, which
/// bounds the transverse disk on the removed side.  Its class always
/// generates the abelianization (its pairing against the kill relator is
/// the determinant of the gluing matrix).  Closed complexes have no
/// boundary and carry no peripheral words.
pub fn vankampen_pi1(complex: &PieceComplex) -> Result<GroupPresentation, AssemblyError> {
    if !complex.is_connected() {
        return Err(AssemblyError::DisconnectedComplex);
    }

    // Free product with generator renaming.
    let mut combined = GroupPresentation::new(vec![]);
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for piece in &complex.pieces {
        let map: Vec<usize> = piece
            .presentation
            .generators()
            .iter()
            .map(|name| combined.add_generator(name))
            .collect();
        maps.push(map);
    }
    let mut relators: Vec<Word> = Vec::new();
    for (piece, map) in complex.pieces.iter().zip(&maps) {
        for rel in piece.presentation.relators() {
            relators.push(rel.remap(map));
        }
    }

    let mut meridian: Option<Word> = None;
    let longitude: Option<Word> = None;

    // Identification and disk relators along branch edges.
    for edge in &complex.edges {
        let from = &complex.pieces[edge.from];
        let to = &complex.pieces[edge.to];
        let (Some(theta), Some(h)) = (
            to.boundary_cycles.get(&CycleLabel::CTheta),
            to.boundary_cycles.get(&CycleLabel::CH),
        ) else {
            continue;
        };
        let theta = theta.remap(&maps[edge.to]);
        let h = h.remap(&maps[edge.to]);
        let image = |column: usize| {
            let (p, q) = edge.matrix.column(column);
            theta.pow(p).concat(&h.pow(q))
        };
        let mut push = |w: Word| {
            if !w.is_empty() && !relators.contains(&w) {
                relators.push(w);
            }
        };
        for (cycle, column) in [(CycleLabel::CTheta1, 0), (CycleLabel::CTheta2, 1)] {
            if let Some(w_from) = from.boundary_cycles.get(&cycle) {
                let w_from = w_from.remap(&maps[edge.from]);
                if !w_from.is_empty() && matches!(complex.label, ComplexLabel::Complement { .. }) {
                    // The core cycle bounds the transverse disk of the
                    // removed 2-knot: its image is the 2-knot meridian.
                    meridian = Some(image(column));
                }
                push(image(column).concat(&w_from.inverse()));
            }
        }
        if let Some(cycle) = edge.filled_disk_cycle {
            let column = match cycle {
                CycleLabel::CTheta1 => 0,
                CycleLabel::CTheta2 => 1,
                _ => 0,
            };
            push(image(column));
        }
    }

    // Eliminate generators occurring exactly once with unit exponent:
    // they are defined by their single relator and used nowhere else.
    let gens = combined.num_generators();
    let keep_fixed: Vec<bool> = {
        let mut fixed = vec![false; gens];
        for w in meridian.iter().chain(longitude.iter()) {
            for &(g, _) in w.letters() {
                fixed[g] = true;
            }
        }
        fixed
    };
    loop {
        let mut occurrences = vec![0usize; gens];
        let mut unit = vec![true; gens];
        for rel in &relators {
            for &(g, e) in rel.letters() {
                occurrences[g] += 1;
                if e.abs() != 1 {
                    unit[g] = false;
                }
            }
        }
        let Some(victim) = (0..gens).find(|&g| !keep_fixed[g] && occurrences[g] == 1 && unit[g])
        else {
            break;
        };
        relators.retain(|rel| rel.letters().iter().all(|&(g, _)| g != victim));
    }

    // Reindex the surviving generators.
    let mut used = vec![false; gens];
    for rel in &relators {
        for &(g, _) in rel.letters() {
            used[g] = true;
        }
    }
    for (g, fixed) in keep_fixed.iter().enumerate() {
        used[g] |= fixed;
    }
    // The free part's generators stay even if untouched by any relator.
    for (piece, map) in complex.pieces.iter().zip(&maps) {
        if piece.kind == PieceKind::FreePart {
            for &g in map {
                used[g] = true;
            }
        }
    }
    let mut remap = vec![usize::MAX; gens];
    let mut names = Vec::new();
    for g in 0..gens {
        if used[g] {
            remap[g] = names.len();
            names.push(combined.generators()[g].clone());
        }
    }
    let mut out = GroupPresentation::new(names);
    for rel in relators {
        out.push_relator(rel.remap(&remap));
    }
    if let Some(w) = meridian {
        out.set_meridian(w.remap(&remap));
    }
    if let Some(w) = longitude {
        out.set_longitude(w.remap(&remap));
    }
    Ok(out)
}

/// First homology of the complex, through the extracted presentation.
pub fn h1(complex: &PieceComplex) -> Result<AbelianInvariants, AssemblyError> {
    Ok(vankampen_pi1(complex)?.abelianization())
}

/// Homology- and finite-quotient-level evidence that a complex is a
/// 4-sphere.  Never claims more than it checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub h1: AbelianInvariants,
    /// `(degree, homomorphism count)` for each degree up to the cap.
    pub hom_counts: Vec<(usize, u64)>,
    pub h1_trivial: bool,
    /// True when every count equals 1, the count for the trivial group.
    pub homs_all_trivial: bool,
}

impl CertificateReport {
    pub fn consistent(&self) -> bool {
        self.h1_trivial && self.homs_all_trivial
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h1: {}", self.h1)?;
        for (k, count) in &self.hom_counts {
            writeln!(f, "homs to degree {k}: {count} (trivial group: 1)")?;
        }
        if self.consistent() {
            write!(
                f,
                "verdict: consistent with the 4-sphere at the homology and finite-quotient level (partial certificate)"
            )
        } else {
            write!(f, "verdict: NOT consistent with the 4-sphere")
        }
    }
}

/// Computes the partial sphere certificate for a complex: trivial
/// abelianization plus trivial homomorphism counts for all degrees up to
/// `kmax` (at most 6).
pub fn sphere_certificate(
    complex: &PieceComplex,
    kmax: usize,
) -> Result<CertificateReport, AssemblyError> {
    let pi1 = vankampen_pi1(complex)?;
    let h1 = pi1.abelianization();
    let mut hom_counts = Vec::new();
    for k in 2..=kmax.max(2) {
        hom_counts.push((k, pi1.count_homs_symmetric(k)?));
    }
    let h1_trivial = h1.is_trivial();
    let homs_all_trivial = hom_counts.iter().all(|&(_, c)| c == 1);
    Ok(CertificateReport {
        h1,
        hom_counts,
        h1_trivial,
        homs_all_trivial,
    })
}

impl fmt::Display for ComplexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexLabel::ClosedS4 => write!(f, "closed"),
            ComplexLabel::Complement { m, n } => write!(f, "complement ({m},{n})"),
            ComplexLabel::GluckResult { site } => write!(f, "gluck({site})"),
        }
    }
}

impl fmt::Display for PieceComplex {
    /// Deterministic text dump: pieces sorted by kind and order, edges
    /// sorted by endpoint kinds, matrices row-major.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.label, self.indices()) {
            (ComplexLabel::Complement { .. }, _) => writeln!(f, "complex: {}", self.label)?,
            (_, Some((m, n))) => writeln!(f, "complex: {} ({m},{n})", self.label)?,
            _ => writeln!(f, "complex: {}", self.label)?,
        }
        let mut pieces: Vec<String> = self
            .pieces
            .iter()
            .map(|p| match p.kind {
                PieceKind::Ball4 => "piece: ball4".to_string(),
                PieceKind::TorusBundle { order, arc } => {
                    format!("piece: torus-bundle order={order} arc={arc}")
                }
                PieceKind::FreePart => {
                    format!("piece: free-part gens={}", p.presentation.num_generators())
                }
            })
            .collect();
        pieces.sort();
        for line in pieces {
            writeln!(f, "{line}")?;
        }
        let kind_name = |p: &Piece| match p.kind {
            PieceKind::Ball4 => "ball4".to_string(),
            PieceKind::TorusBundle { arc, .. } => format!("torus-bundle({arc})"),
            PieceKind::FreePart => "free-part".to_string(),
        };
        let mut edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                let filled = e
                    .filled_disk_cycle
                    .map(|c| format!(" filled={c}"))
                    .unwrap_or_default();
                format!(
                    "edge: {} -> {} matrix={}{}",
                    kind_name(&self.pieces[e.from]),
                    kind_name(&self.pieces[e.to]),
                    e.matrix,
                    filled
                )
            })
            .collect();
        edges.sort();
        for line in edges {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
