//! Index calculus for branched twist spins.
//!
//! A branched twist spin is named by a coprime pair `(m, n)`: `m` is the
//! twist index (any nonzero integer, or 0 only for the spun knot
//! `K^{0,1}`) and `n >= 1` is the branch index.  The Gluck twist acts on
//! these indices by integer rewrites:
//!
//! * twisting along the twin partner sends `(m,n)` to `(m+n, n)`;
//! * twisting along the knot itself sends `(m,n)` to `(e'm, e'(m+n))`,
//!   where `e'` is the sign of `m+n`;
//! * two twists at the same site compose to `(e''m, e''(2m+n))` with
//!   `e''` the sign of `2m+n`.
//!
//! Iterating these moves together with the twin swap `(m,n) -> (en, em)`
//! is a Euclidean algorithm: every index pair reduces to some `(k, 1)`.

use std::fmt;

use thiserror::Error;

/// Errors raised by the index calculus.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("branch index must be positive, got {0}")]
    NonPositiveN(i64),
    #[error("|{0}| and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("twist index 0 requires branch index 1 (spun knot), got {0}")]
    ZeroMNotSpun(i64),
    #[error("the spun knot (0,1) has no twin partner")]
    SpunKnotHasNoPartner,
    #[error("twin state violates the partner relation: {0}")]
    InvalidState(String),
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Sign of `m` with the convention `eps(0) = +1`.
pub fn eps(m: i64) -> i64 {
    if m >= 0 {
        1
    } else {
        -1
    }
}

/// The three signs attached to an index pair.
///
/// `eps` is the sign of `m`, `eps_prime` the sign of `m+n` and
/// `eps_dprime` the sign of `2m+n`.  All three are total: the value at a
/// zero argument is fixed to `+1`.  Only `eps_dprime` is specified at zero
/// by the twist calculus itself; the other two zero cases never reach a
/// formula that consumes them (the rewrites degenerate to the spun knot
/// first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignConvention {
    pub eps: i64,
    pub eps_prime: i64,
    pub eps_dprime: i64,
}

impl SignConvention {
    pub fn new(m: i64, n: i64) -> Self {
        SignConvention {
            eps: eps(m),
            eps_prime: eps(m + n),
            eps_dprime: eps(2 * m + n),
        }
    }
}

/// A validated branched-twist-spin index pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BTSIndex {
    m: i64,
    n: i64,
}

impl BTSIndex {
    /// Validates and wraps an index pair.
    ///
    /// Accepts exactly the pairs naming a branched twist spin: `n >= 1`,
    /// `gcd(|m|, n) = 1`, and `m = 0` only in the spun-knot form `(0,1)`.
    pub fn new(m: i64, n: i64) -> Result<Self, OrbitError> {
        if n <= 0 {
            return Err(OrbitError::NonPositiveN(n));
        }
        if m == 0 && n != 1 {
            return Err(OrbitError::ZeroMNotSpun(n));
        }
        if gcd(m, n) != 1 {
            return Err(OrbitError::NotCoprime(m, n));
        }
        Ok(BTSIndex { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// The spun knot `(0,1)`, terminal for the twist calculus.
    pub fn is_spun(&self) -> bool {
        self.m == 0
    }

    pub fn signs(&self) -> SignConvention {
        SignConvention::new(self.m, self.n)
    }

    /// The twin partner `(en, em)`, the other singular 2-knot of the same
    /// circle action.
    pub fn twin_partner(&self) -> Result<BTSIndex, OrbitError> {
        if self.is_spun() {
            return Err(OrbitError::SpunKnotHasNoPartner);
        }
        let e = eps(self.m);
        // en is the new twist index, em = |m| >= 1 the new branch index.
        BTSIndex::new(e * self.n, e * self.m)
    }
}

impl fmt::Display for BTSIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Alias for [`BTSIndex::new`]; the public validation entry point.
pub fn validate_index(m: i64, n: i64) -> Result<BTSIndex, OrbitError> {
    BTSIndex::new(m, n)
}

/// Which member of a twin the Gluck twist is performed along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    First,
    Second,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::First => write!(f, "first"),
            Site::Second => write!(f, "second"),
        }
    }
}

/// An ordered twin of branched twist spins plus its Gluck-twist history.
///
/// The second member is always the twin partner of the first.  The one
/// exception is the terminal state reached when a rewrite degenerates to
/// the spun knot: both members are then `(0,1)` and no further rewrite is
/// possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinState {
    first: BTSIndex,
    second: BTSIndex,
    history: Vec<Site>,
    terminal: bool,
}

impl TwinState {
    pub fn new(first: BTSIndex) -> Result<Self, OrbitError> {
        let second = first.twin_partner()?;
        Ok(TwinState {
            first,
            second,
            history: Vec::new(),
            terminal: false,
        })
    }

    /// Reconstructs a state from both members, validating the partner
    /// relation.
    pub fn from_pair(first: BTSIndex, second: BTSIndex) -> Result<Self, OrbitError> {
        let state = TwinState {
            first,
            second,
            history: Vec::new(),
            terminal: false,
        };
        state.validate()?;
        Ok(state)
    }

    pub fn first(&self) -> BTSIndex {
        self.first
    }

    pub fn second(&self) -> BTSIndex {
        self.second
    }

    pub fn history(&self) -> &[Site] {
        &self.history
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    fn member(&self, site: Site) -> BTSIndex {
        match site {
            Site::First => self.first,
            Site::Second => self.second,
        }
    }

    /// Checks the partner relation (suspended on terminal states).
    pub fn validate(&self) -> Result<(), OrbitError> {
        if self.terminal {
            if self.first.is_spun() && self.second.is_spun() {
                return Ok(());
            }
            return Err(OrbitError::InvalidState(format!(
                "terminal state must hold two spun knots, got ({}, {})",
                self.first, self.second
            )));
        }
        let partner = self.first.twin_partner()?;
        if partner != self.second {
            return Err(OrbitError::InvalidState(format!(
                "second member is {}, expected {}",
                self.second, partner
            )));
        }
        Ok(())
    }

    /// Performs the Gluck twist along the member at `site` and rewrites
    /// both indices.
    ///
    /// With `(m,n)` the member at `site` and `e`, `e'` its signs, that
    /// member becomes `(e'm, e'(m+n))` and the other becomes
    /// `(e(m+n), em)`.  When `m+n = 0` (only `(-1,1)`) both images
    /// degenerate to the spun knot `(0,1)` and the state is marked
    /// terminal.
    pub fn gluck_rewrite(&self, site: Site) -> Result<TwinState, OrbitError> {
        if self.terminal {
            return Err(OrbitError::SpunKnotHasNoPartner);
        }
        self.validate()?;
        let at = self.member(site);
        let (m, n) = (at.m(), at.n());
        let e = eps(m);
        let mut history = self.history.clone();
        history.push(site);
        if m + n == 0 {
            let spun = BTSIndex::new(0, 1)?;
            return Ok(TwinState {
                first: spun,
                second: spun,
                history,
                terminal: true,
            });
        }
        let ep = eps(m + n);
        let twisted = BTSIndex::new(ep * m, ep * (m + n))?;
        let other = BTSIndex::new(e * (m + n), e * m)?;
        let (first, second) = match site {
            Site::First => (twisted, other),
            Site::Second => (other, twisted),
        };
        let state = TwinState {
            first,
            second,
            history,
            terminal: false,
        };
        state.validate()?;
        Ok(state)
    }

    /// Rebuilds a state from a starting knot and a move list, validating
    /// every intermediate.
    pub fn replay(first: BTSIndex, moves: &[Site]) -> Result<TwinState, OrbitError> {
        let mut state = TwinState::new(first)?;
        for &site in moves {
            state = state.gluck_rewrite(site)?;
        }
        Ok(state)
    }
}

/// Target of the double twist at one site: `(idx, (e''m, e''(2m+n)))`,
/// cross-checked by replaying two `gluck_rewrite` moves at `Site::First`.
///
/// When `2m+n = 0` the formula degenerates and the replayed result is the
/// spun knot `(0,1)`; that value is returned.  When `m+n = 0` the first
/// twist already terminates at the spun knot, so the double twist is
/// undefined and the replay's error is propagated.
pub fn double_gluck_check(idx: BTSIndex) -> Result<(BTSIndex, BTSIndex), OrbitError> {
    if idx.is_spun() {
        return Err(OrbitError::SpunKnotHasNoPartner);
    }
    let (m, n) = (idx.m(), idx.n());
    let replayed = TwinState::replay(idx, &[Site::First, Site::First])?;
    let target = if 2 * m + n == 0 {
        BTSIndex::new(0, 1)?
    } else {
        let edd = eps(2 * m + n);
        BTSIndex::new(edd * m, edd * (2 * m + n))?
    };
    if replayed.first() != target {
        return Err(OrbitError::InvalidState(format!(
            "double twist replay gave {}, formula gives {}",
            replayed.first(),
            target
        )));
    }
    Ok((idx, target))
}

/// Orbit data `{(S^3, K), m, n}`: the underlying 1-knot plus the two
/// exceptional orbit indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    pub knot_label: String,
    pub index: BTSIndex,
}

impl OrbitData {
    pub fn new(knot_label: impl Into<String>, m: i64, n: i64) -> Result<Self, OrbitError> {
        Ok(OrbitData {
            knot_label: knot_label.into(),
            index: BTSIndex::new(m, n)?,
        })
    }
}

impl fmt::Display for OrbitData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}, {}, {}}}",
            self.knot_label,
            self.index.m(),
            self.index.n()
        )
    }
}

/// The orbit-space rewrite induced by the Gluck twist along the twin
/// partner: `{K, m, n} -> {K, m+n, n}`.
pub fn orbit_rewrite(data: &OrbitData) -> Result<OrbitData, OrbitError> {
    if data.index.is_spun() {
        return Err(OrbitError::SpunKnotHasNoPartner);
    }
    let (m, n) = (data.index.m(), data.index.n());
    Ok(OrbitData {
        knot_label: data.knot_label.clone(),
        index: BTSIndex::new(m + n, n)?,
    })
}

/// One move of the Euclidean reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    AddN,
    SubN,
    Swap,
}

impl Move {
    /// Applies the move to an index pair, validating the result.
    pub fn apply(&self, idx: BTSIndex) -> Result<BTSIndex, OrbitError> {
        let (m, n) = (idx.m(), idx.n());
        match self {
            Move::AddN => BTSIndex::new(m + n, n),
            Move::SubN => BTSIndex::new(m - n, n),
            Move::Swap => {
                if idx.is_spun() {
                    return Err(OrbitError::SpunKnotHasNoPartner);
                }
                idx.twin_partner()
            }
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::AddN => write!(f, "AddN"),
            Move::SubN => write!(f, "SubN"),
            Move::Swap => write!(f, "Swap"),
        }
    }
}

/// A finite run of AddN/SubN/Swap moves ending at branch index 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    start: BTSIndex,
    steps: Vec<(Move, BTSIndex)>,
}

impl ReductionTrace {
    pub fn start(&self) -> BTSIndex {
        self.start
    }

    pub fn steps(&self) -> &[(Move, BTSIndex)] {
        &self.steps
    }

    pub fn terminal(&self) -> BTSIndex {
        self.steps.last().map(|(_, idx)| *idx).unwrap_or(self.start)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for (mv, idx) in &self.steps {
            write!(f, " -{}-> {}", mv, idx)?;
        }
        writeln!(f)?;
        write!(f, "terminal: {} moves: {}", self.terminal(), self.len())
    }
}

/// Reduces an index pair to `(k, 1)` by the least-absolute-residue
/// strategy: AddN/SubN bring the twist index to its least absolute
/// residue mod `n`, then a Swap exchanges the roles.  The branch index
/// strictly decreases at every Swap, so the run terminates.
///
/// The terminal `k` depends on the strategy; the trace itself is the
/// result.
pub fn reduce_to_base(idx: BTSIndex) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut cur = idx;
    while cur.n() > 1 {
        let n = cur.n();
        let mut r = cur.m().rem_euclid(n);
        if r > n / 2 {
            r -= n;
        }
        while cur.m() > r {
            cur = Move::SubN
                .apply(cur)
                .expect("SubN preserves coprimality and the branch index");
            steps.push((Move::SubN, cur));
        }
        while cur.m() < r {
            cur = Move::AddN
                .apply(cur)
                .expect("AddN preserves coprimality and the branch index");
            steps.push((Move::AddN, cur));
        }
        // r != 0 here: gcd(r, n) = 1 and n >= 2.
        cur = Move::Swap
            .apply(cur)
            .expect("swap of a nonzero twist index");
        steps.push((Move::Swap, cur));
    }
    ReductionTrace { start: idx, steps }
}

/// Outcome of the complement-comparison test for an index pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The pair is inequivalent but has homeomorphic complements.
    InequivalentPair { first: BTSIndex, second: BTSIndex },
    /// The test's hypotheses fail; nothing is asserted.
    Indeterminate(IndeterminateReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndeterminateReason {
    EvenTwistIndex,
    NontrivialityNotAsserted,
    DegeneratePartnerImage,
}

impl fmt::Display for IndeterminateReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndeterminateReason::EvenTwistIndex => write!(f, "twist index is even"),
            IndeterminateReason::NontrivialityNotAsserted => {
                write!(f, "nontriviality not asserted")
            }
            IndeterminateReason::DegeneratePartnerImage => {
                write!(f, "image degenerates to the spun knot")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub index: BTSIndex,
    pub verdict: Verdict,
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::InequivalentPair { first, second } => write!(
                f,
                "{}: inequivalent pair ({},{}) with homeomorphic complements",
                self.index, first, second
            ),
            Verdict::Indeterminate(reason) => {
                write!(f, "{}: indeterminate ({})", self.index, reason)
            }
        }
    }
}

/// Applies the odd-twist-index complement test.
///
/// For odd `m` and a knot asserted nontrivial, `K^{m,n}` and its image
/// `K^{e'm, e'(m+n)}` under the Gluck twist along the knot itself are
/// inequivalent with homeomorphic complements.  Everything else is
/// reported indeterminate; no equivalence claim is ever made.
pub fn classify(idx: BTSIndex, nontrivial: bool) -> ClassificationReport {
    let verdict = if idx.m().rem_euclid(2) == 0 {
        Verdict::Indeterminate(IndeterminateReason::EvenTwistIndex)
    } else if !nontrivial {
        Verdict::Indeterminate(IndeterminateReason::NontrivialityNotAsserted)
    } else if idx.m() + idx.n() == 0 {
        Verdict::Indeterminate(IndeterminateReason::DegeneratePartnerImage)
    } else {
        let ep = eps(idx.m() + idx.n());
        let second = BTSIndex::new(ep * idx.m(), ep * (idx.m() + idx.n()))
            .expect("gluck image of a valid pair is valid");
        Verdict::InequivalentPair { first: idx, second }
    };
    ClassificationReport {
        index: idx,
        verdict,
    }
}

/// All valid index pairs with `1 <= |m| <= max` and `1 <= n <= max`.
pub fn coprime_pairs(max: i64) -> Vec<BTSIndex> {
    let mut out = Vec::new();
    for m in -max..=max {
        if m == 0 {
            continue;
        }
        for n in 1..=max {
            if gcd(m, n) == 1 {
                out.push(BTSIndex { m, n });
            }
        }
    }
    out
}

/// Summary of a reduction sweep over all coprime pairs up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionSweep {
    pub pairs: u64,
    pub all_terminal: bool,
    pub all_steps_coprime: bool,
    pub max_moves: usize,
}

fn check_reduction(idx: BTSIndex) -> (bool, bool, usize) {
    let trace = reduce_to_base(idx);
    let terminal_ok = trace.terminal().n() == 1;
    let coprime_ok = trace
        .steps()
        .iter()
        .all(|(_, step)| gcd(step.m(), step.n()) == 1 && step.n() >= 1);
    (terminal_ok, coprime_ok, trace.len())
}

fn merge_reduction(items: impl Iterator<Item = (bool, bool, usize)>) -> ReductionSweep {
    let mut sweep = ReductionSweep {
        pairs: 0,
        all_terminal: true,
        all_steps_coprime: true,
        max_moves: 0,
    };
    for (t, c, len) in items {
        sweep.pairs += 1;
        sweep.all_terminal &= t;
        sweep.all_steps_coprime &= c;
        sweep.max_moves = sweep.max_moves.max(len);
    }
    sweep
}

/// Sequential reduction sweep.
pub fn reduction_sweep_seq(max: i64) -> ReductionSweep {
    merge_reduction(coprime_pairs(max).into_iter().map(check_reduction))
}

/// Data-parallel reduction sweep; identical result to the sequential one.
#[cfg(feature = "parallel")]
pub fn reduction_sweep_par(max: i64) -> ReductionSweep {
    use rayon::prelude::*;
    let results: Vec<_> = coprime_pairs(max)
        .into_par_iter()
        .map(check_reduction)
        .collect();
    merge_reduction(results.into_iter())
}

/// Reduction sweep over all coprime pairs with `|m|, n <= max`.
pub fn reduction_sweep(max: i64) -> ReductionSweep {
    #[cfg(feature = "parallel")]
    {
        reduction_sweep_par(max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        reduction_sweep_seq(max)
    }
}
