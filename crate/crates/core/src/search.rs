//! Exhaustive maximum-length search over canonical transition sequences.
//!
//! Sequences are enumerated depth-first with labels introduced in increasing
//! order (`1, 2, ...`), which removes coordinate relabelings. Every code with
//! `N > 2k` has all windows of `k + 1` transitions distinct, and a code with
//! a bit run of `r` has a window of `r` distinct transitions, so after a
//! rotation and relabeling every candidate starts with `1, 2, ..., p` where
//! `p = max(k + 1, r)`. The search fixes that prefix.
//!
//! A partial path `x_1, ..., x_m` is pruned exactly: a pair of its vertices
//! at cube distance `h < k` but path distance `p != h` can only be legal if
//! the eventual cycle brings them together the other way round, which forces
//! the cycle length to be `p + h`. The path survives only while all such
//! forced lengths agree and remain reachable.
//!
//! The subtrees below the prefix are explored on the rayon pool with equal
//! shares of the node budget, so results do not depend on scheduling unless
//! the time budget runs out.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::analysis::{is_spread_at_least, is_symmetric, max_bit_run};
use crate::bounds::{douglas_upper, symmetric_family_max};
use crate::construct::{construct_form, FamilyParams};
use crate::error::{Error, Result};
use crate::sequence::{label_mask, TransitionSequence, MAX_DIMENSION};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(600);

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub d: usize,
    pub k: usize,
    /// Require a bit run of at least this length.
    pub min_phi: Option<usize>,
    /// Only symmetric codes (`tau_i = tau_{i + N/2}`).
    pub symmetric: bool,
    /// Longest cycle the search will consider.
    pub max_length_hint: Option<usize>,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// A known code; the result is never shorter than it.
    pub seed: Option<TransitionSequence>,
}

impl SearchProblem {
    pub fn new(d: usize, k: usize) -> Self {
        Self {
            d,
            k,
            min_phi: None,
            symmetric: false,
            max_length_hint: None,
            node_budget: None,
            time_budget: None,
            seed: None,
        }
    }

    pub fn min_phi(mut self, r: usize) -> Self {
        self.min_phi = Some(r);
        self
    }

    pub fn symmetric(mut self, on: bool) -> Self {
        self.symmetric = on;
        self
    }

    pub fn max_length(mut self, n: usize) -> Self {
        self.max_length_hint = Some(n);
        self
    }

    pub fn node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn time_budget(mut self, t: Duration) -> Self {
        self.time_budget = Some(t);
        self
    }

    pub fn seed(mut self, t: TransitionSequence) -> Self {
        self.seed = Some(t);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.d < self.k {
            return Err(Error::InvalidParameters(format!(
                "need d >= k >= 1; got d={}, k={}",
                self.d, self.k
            )));
        }
        if self.d > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge(self.d));
        }
        if let Some(r) = self.min_phi {
            if r == 0 || r > self.d {
                return Err(Error::InvalidParameters(format!(
                    "bit run {r} must lie in 1..={}",
                    self.d
                )));
            }
        }
        Ok(())
    }

    /// Shortest cycle accepted: `max(2k + 2, 4)`.
    pub fn min_length(&self) -> usize {
        (2 * self.k + 2).max(4)
    }

    /// Length of the forced repeat-free prefix `1, 2, ..., p`.
    pub fn prefix_length(&self) -> usize {
        (self.k + 1).max(self.min_phi.unwrap_or(0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    NodeBudget,
    TimeBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Zero when no code was found.
    pub best_length: usize,
    /// Lexicographically least canonical code of `best_length`.
    pub witness: Option<TransitionSequence>,
    /// The whole canonical tree (up to `max_length_hint`) was explored.
    pub exhaustive: bool,
    pub stopped: Option<StopReason>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
struct Config {
    d: u32,
    k: usize,
    min_phi: usize,
    symmetric: bool,
    min_len: usize,
    cap: usize,
}

impl Config {
    fn cycle_len_ok(&self, n: usize) -> bool {
        n >= self.min_len && n <= self.cap && (!self.symmetric || n % 2 == 0)
    }
}

/// Checks appending `new` to the path `verts` (which starts at `x_1`) for a
/// spread-`k` cycle. Returns the cycle length the extended path forces, if
/// any, or `None` when no such cycle can contain it.
#[inline]
pub(crate) fn admit_vertex(
    verts: &[u64],
    new: u64,
    k: usize,
    mut forced: Option<usize>,
) -> Option<Option<usize>> {
    let m = verts.len();
    for (a, &v) in verts.iter().enumerate() {
        let h = (v ^ new).count_ones() as usize;
        if h >= k {
            continue;
        }
        let p = m - a;
        if p == h {
            continue;
        }
        // Going back to x_{a+1} through the closing edge takes at least
        // a + 1 steps.
        if a + 1 > h {
            return None;
        }
        let n = p + h;
        match forced {
            Some(f) if f != n => return None,
            _ => forced = Some(n),
        }
    }
    Some(forced)
}

#[derive(Clone)]
struct Walker<'a> {
    cfg: &'a Config,
    verts: Vec<u64>,
    labels: Vec<u32>,
    nodes: u64,
    budget: u64,
    deadline: Instant,
    stopped: Option<StopReason>,
    best: Option<Vec<u32>>,
}

fn better(candidate: &[u32], incumbent: Option<&Vec<u32>>) -> bool {
    match incumbent {
        None => true,
        Some(b) => candidate.len() > b.len() || candidate.len() == b.len() && candidate < &b[..],
    }
}

impl<'a> Walker<'a> {
    fn new(cfg: &'a Config, budget: u64, deadline: Instant) -> Self {
        Self {
            cfg,
            verts: vec![0],
            labels: Vec::new(),
            nodes: 0,
            budget,
            deadline,
            stopped: None,
            best: None,
        }
    }

    #[inline]
    fn admit(&self, new: u64, forced: Option<usize>) -> Option<Option<usize>> {
        admit_vertex(&self.verts, new, self.cfg.k, forced)
            .filter(|f| f.map_or(true, |n| self.cfg.cycle_len_ok(n)))
    }

    fn tick(&mut self) -> bool {
        if self.stopped.is_some() {
            return false;
        }
        if self.nodes >= self.budget {
            self.stopped = Some(StopReason::NodeBudget);
            return false;
        }
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && Instant::now() >= self.deadline {
            self.stopped = Some(StopReason::TimeBudget);
            return false;
        }
        true
    }

    fn push(&mut self, label: u32) {
        let v = self.verts.last().unwrap() ^ label_mask(label);
        self.verts.push(v);
        self.labels.push(label);
    }

    fn pop(&mut self) {
        self.verts.pop();
        self.labels.pop();
    }

    fn offer(&mut self, candidate: Vec<u32>) {
        if self.cfg.min_phi > 0 {
            let t = TransitionSequence::new(candidate.clone(), self.cfg.d as usize)
                .expect("labels within d");
            if max_bit_run(&t).unwrap_or(0) < self.cfg.min_phi {
                return;
            }
        }
        if better(&candidate, self.best.as_ref()) {
            self.best = Some(candidate);
        }
    }

    fn try_close(&mut self, forced: Option<usize>) {
        if self.cfg.symmetric {
            let h = self.labels.len();
            let n = 2 * h;
            if !self.cfg.cycle_len_ok(n) || forced.is_some_and(|f| f != n) {
                return;
            }
            if self.verts[h] == 0 {
                return;
            }
            let mut cycle = self.labels.clone();
            cycle.extend_from_within(..);
            let t = TransitionSequence::new(cycle, self.cfg.d as usize).expect("labels within d");
            if t.is_circuit() && is_spread_at_least(&t, self.cfg.k).unwrap_or(false) {
                let labels = t.labels().to_vec();
                self.offer(labels);
            }
        } else {
            let m = self.verts.len();
            let last = *self.verts.last().unwrap();
            if last.count_ones() != 1
                || !self.cfg.cycle_len_ok(m)
                || forced.is_some_and(|f| f != m)
            {
                return;
            }
            let mut cycle = self.labels.clone();
            cycle.push(last.trailing_zeros() + 1);
            self.offer(cycle);
        }
    }

    /// Largest cycle length any extension of the current path could reach.
    fn can_extend(&self, forced: Option<usize>) -> bool {
        let limit = forced.map_or(self.cfg.cap, |f| f.min(self.cfg.cap));
        if self.cfg.symmetric {
            2 * (self.labels.len() + 1) <= limit
        } else {
            self.verts.len() < limit
        }
    }

    fn children(&self, max_used: u32, forced: Option<usize>) -> Vec<(u32, Option<usize>)> {
        let last_label = self.labels.last().copied().unwrap_or(0);
        let top = (max_used + 1).min(self.cfg.d);
        let here = *self.verts.last().unwrap();
        (1..=top)
            .filter(|&l| l != last_label)
            .filter_map(|l| self.admit(here ^ label_mask(l), forced).map(|f| (l, f)))
            .collect()
    }

    fn dfs(&mut self, max_used: u32, forced: Option<usize>) {
        self.try_close(forced);
        if !self.can_extend(forced) {
            return;
        }
        let last_label = self.labels.last().copied().unwrap_or(0);
        let top = (max_used + 1).min(self.cfg.d);
        for label in 1..=top {
            if label == last_label {
                continue;
            }
            let here = *self.verts.last().unwrap();
            let Some(next_forced) = self.admit(here ^ label_mask(label), forced) else {
                continue;
            };
            if !self.tick() {
                return;
            }
            self.push(label);
            self.dfs(max_used.max(label), next_forced);
            self.pop();
            if self.stopped.is_some() {
                return;
            }
        }
    }
}

/// Rotation/reflection of `t`, relabeled by first occurrence, that starts
/// with `prefix` distinct labels; the lexicographically least such form.
pub fn canonical_form(t: &TransitionSequence, prefix: usize) -> Option<TransitionSequence> {
    let n = t.len();
    let mut best: Option<TransitionSequence> = None;
    for view in [t.clone(), t.reversed()] {
        for shift in 0..n {
            let (c, _) = view.rotated(shift).normalize();
            let head = &c.labels()[..prefix.min(n)];
            if head.len() < prefix || head.iter().enumerate().any(|(i, &l)| l != i as u32 + 1) {
                continue;
            }
            if best.as_ref().map_or(true, |b| c.labels() < b.labels()) {
                best = Some(c);
            }
        }
    }
    best
}

fn check_seed(p: &SearchProblem, seed: &TransitionSequence) -> Result<TransitionSequence> {
    let reject = |why: &str| Err(Error::InvalidParameters(format!("seed witness {why}")));
    if !seed.is_circuit() {
        return reject("is not a circuit");
    }
    if seed.dimension_used() > p.d {
        return reject("uses more coordinates than d");
    }
    if seed.len() < p.min_length() {
        return reject("is shorter than the minimum closure length");
    }
    if !is_spread_at_least(seed, p.k)? {
        return reject("does not have the requested spread");
    }
    if p.min_phi.is_some_and(|r| max_bit_run(seed).unwrap_or(0) < r) {
        return reject("lacks the requested bit run");
    }
    if p.symmetric && !is_symmetric(seed) {
        return reject("is not symmetric");
    }
    let canon = canonical_form(seed, p.prefix_length())
        .expect("a spread-k code longer than 2k has a repeat-free window of k+1");
    let (canon, _) = canon.normalize();
    Ok(TransitionSequence::new(canon.labels().to_vec(), p.d).expect("d covers the seed"))
}

/// Longest circuit code for `p`, exhaustively where budgets allow.
pub fn search_max(p: &SearchProblem) -> Result<SearchResult> {
    p.validate()?;
    let started = Instant::now();
    let seed = p.seed.as_ref().map(|s| check_seed(p, s)).transpose()?;
    let deadline = started + p.time_budget.unwrap_or(DEFAULT_TIME_BUDGET);
    let budget = p.node_budget.unwrap_or(DEFAULT_NODE_BUDGET);
    let cfg = Config {
        d: p.d as u32,
        k: p.k,
        min_phi: p.min_phi.unwrap_or(0),
        symmetric: p.symmetric,
        min_len: p.min_length(),
        cap: p.max_length_hint.unwrap_or(usize::MAX),
    };

    let mut root = Walker::new(&cfg, budget, deadline);
    root.best = seed.map(|s| s.labels().to_vec());
    let prefix = p.prefix_length();
    let finish = |w: &Walker, nodes: u64, stopped: Option<StopReason>| -> SearchResult {
        let witness = w.best.clone().map(|labels| {
            TransitionSequence::new(labels, p.d).expect("witness labels within d")
        });
        if let Some(t) = &witness {
            debug_assert!(is_spread_at_least(t, p.k).unwrap_or(false));
        }
        SearchResult {
            best_length: witness.as_ref().map_or(0, |t| t.len()),
            witness,
            exhaustive: stopped.is_none(),
            stopped,
            nodes_explored: nodes,
            elapsed: started.elapsed(),
        }
    };

    // No code longer than 2k fits if the forced prefix needs more than d
    // coordinates.
    if prefix > p.d {
        return Ok(finish(&root, 0, None));
    }
    let mut forced = None;
    for label in 1..=prefix as u32 {
        let here = *root.verts.last().unwrap();
        match root.admit(here ^ label_mask(label), forced) {
            Some(f) if root.tick() => {
                forced = f;
                root.push(label);
            }
            Some(_) => return Ok(finish(&root, root.nodes, root.stopped)),
            None => return Ok(finish(&root, root.nodes, None)),
        }
    }
    root.try_close(forced);
    if !root.can_extend(forced) {
        return Ok(finish(&root, root.nodes, None));
    }

    let kids = root.children(prefix as u32, forced);
    let remaining = budget.saturating_sub(root.nodes);
    let share = remaining / kids.len().max(1) as u64;
    let extra = remaining % kids.len().max(1) as u64;
    let subtrees: Vec<Walker> = kids
        .par_iter()
        .enumerate()
        .map(|(i, &(label, f))| {
            let mut w = root.clone();
            w.best = None;
            w.nodes = 0;
            w.budget = share + u64::from((i as u64) < extra);
            if w.tick() {
                w.push(label);
                w.dfs((prefix as u32).max(label), f);
            }
            w
        })
        .collect();

    let mut nodes = root.nodes;
    let mut stopped = None;
    for w in subtrees {
        nodes += w.nodes;
        stopped = stopped.or(w.stopped);
        if let Some(b) = w.best {
            if better(&b, root.best.as_ref()) {
                root.best = Some(b);
            }
        }
    }
    Ok(finish(&root, nodes, stopped))
}

/// Symmetric-only search; `p.symmetric` is forced on.
pub fn search_max_symmetric(p: &SearchProblem) -> Result<SearchResult> {
    let mut p = p.clone();
    p.symmetric = true;
    search_max(&p)
}

#[derive(Debug, Clone)]
pub struct ConjectureProbe {
    pub k: u32,
    pub l: u32,
    pub d: usize,
    /// `4k + 2l`, the length of the seeded family member.
    pub family_length: usize,
    pub result: SearchResult,
    pub found_longer: bool,
}

impl ConjectureProbe {
    pub fn verdict(&self) -> &'static str {
        if self.found_longer {
            "counterexample: longer code found"
        } else if self.result.exhaustive {
            "no longer code up to the length cap"
        } else {
            "consistent, not exhaustive"
        }
    }
}

/// Looks for a code longer than `4k + 2l` in dimension `3k/2 + (l+1)/2`,
/// seeded with the symmetric family member and capped at Douglas' upper
/// bound. `k` odd `>= 9`, `l` even `>= 2`, `k >= 2l + 1`.
pub fn probe_conjecture(
    k: u32,
    l: u32,
    node_budget: Option<u64>,
    time_budget: Option<Duration>,
) -> Result<ConjectureProbe> {
    if k < 9 {
        return Err(Error::InvalidParameters(format!("k = {k} must be at least 9")));
    }
    let params = FamilyParams::new(k, l)?;
    let family_length: usize = symmetric_family_max(k, l)?;
    let d = params.dimension() as usize;
    let mut problem = SearchProblem::new(d, k as usize)
        .max_length(douglas_upper(k, l)?)
        .seed(construct_form(params));
    problem.node_budget = node_budget;
    problem.time_budget = time_budget;
    let result = search_max(&problem)?;
    Ok(ConjectureProbe {
        k,
        l,
        d,
        family_length,
        found_longer: result.best_length > family_length,
        result,
    })
}
