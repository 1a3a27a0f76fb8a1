//! Exact and heuristic searches over the Hamming space: minimal covering
//! codes via branch-and-bound on the set-cover formulation, exhaustive
//! index-maximal frames for a fixed winner count, the minimal
//! distance-sum curve, and the greedy frame path.
//!
//! Determinism: exact searches are fully deterministic; heuristic searches
//! are deterministic given their seed (restarts run in parallel but are
//! merged by restart number, and node counts are summed over the whole
//! batch so thread count never changes the result).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use itertools::Itertools;
use num::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::sphere_covering_bound;
use crate::error::Error;
use crate::nm;
use crate::rational::{ratio_u64, Rational};
use crate::space::{index_distance, space_size, Limits, LotteryFrame, OutcomeIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// No smaller code attains the target radius; proven by exhausted
    /// branch-and-bound.
    ExactMinimal,
    /// A verified cover of the stated size; optimality not claimed.
    UpperBoundWitness,
}

/// Outcome of a covering-code search. The frame's covering radius is
/// re-measured before the certificate is returned; search results are
/// never trusted unchecked.
#[derive(Clone, Debug)]
pub struct SearchCertificate {
    pub kind: CertificateKind,
    pub frame: LotteryFrame,
    pub target_radius: u32,
    pub verified_radius: u32,
    pub nodes_explored: u64,
    pub seed: Option<u64>,
    pub requested_size: Option<usize>,
}

/// Search tunables; `Default` is sized for desk-scale runs.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Approximate ceiling on explored nodes (branch-and-bound calls,
    /// candidate evaluations, enumerated subsets).
    pub budget: u64,
    pub seed: u64,
    /// Exact branch-and-bound refuses spaces larger than this (hard upper
    /// limit 128 outcomes).
    pub exact_space_cap: u64,
    /// Heuristic mode stops improving once a witness of this size exists;
    /// missing the target is reported in the certificate, not an error.
    pub target_size: Option<usize>,
    pub restarts: u32,
    pub moves_per_restart: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 50_000_000,
            seed: 0,
            exact_space_cap: 64,
            target_size: None,
            restarts: 32,
            moves_per_restart: 20_000,
        }
    }
}

const EXACT_HARD_CAP: u64 = 128;
const HEURISTIC_SPACE_CAP: u64 = 1 << 22;
const GREEDY_PATH_CAP: u64 = 4096;
const WALK_NOISE: f64 = 0.25;

/// Minimal covering code for `(q, n, R)`.
///
/// Exact mode proves minimality by iterative deepening from the sphere
/// covering bound, branching on which codeword covers the smallest
/// uncovered outcome (ball sizes are uniform, so the fewest-candidates rule
/// reduces to that) with `⌈uncovered/ball⌉` pruning and the first codeword
/// pinned to the all-zero outcome. Heuristic mode runs greedy max-coverage
/// seeding followed by seeded swap-walk repair at decreasing sizes.
pub fn minimal_covering_code(
    q: u32,
    n: u32,
    r: u32,
    mode: SearchMode,
    opts: &SearchOptions,
    limits: &Limits,
) -> Result<SearchCertificate, Error> {
    if r > n {
        return Err(Error::InvalidParameter(format!(
            "covering radius {r} exceeds the length {n}"
        )));
    }
    let (code, nodes, kind, seed) = match mode {
        SearchMode::Exact => {
            let (code, nodes) = exact_minimal(q, n, r, opts)?;
            (code, nodes, CertificateKind::ExactMinimal, None)
        }
        SearchMode::Heuristic => {
            let (code, nodes) = heuristic_cover(q, n, r, opts, limits)?;
            (code, nodes, CertificateKind::UpperBoundWitness, Some(opts.seed))
        }
    };
    let frame = LotteryFrame::new(q, n, code.into_iter().map(OutcomeIndex).collect())?;
    let verified_radius = nm::covering_radius(&frame, limits)?;
    if verified_radius > r {
        return Err(Error::Internal(format!(
            "search produced a cover of radius {verified_radius} > {r}"
        )));
    }
    Ok(SearchCertificate {
        kind,
        frame,
        target_radius: r,
        verified_radius,
        nodes_explored: nodes,
        seed,
        requested_size: match mode {
            SearchMode::Exact => None,
            SearchMode::Heuristic => opts.target_size,
        },
    })
}

/// Exact decision: does a radius-`r` cover of exactly `size` codewords
/// exist? Same branch-and-bound core as exact search.
pub fn cover_exists(
    q: u32,
    n: u32,
    r: u32,
    size: usize,
    opts: &SearchOptions,
) -> Result<bool, Error> {
    if size == 0 {
        return Ok(false);
    }
    let mut ctx = ExactContext::build(q, n, r, opts)?;
    Ok(ctx.feasible(size)?.is_some())
}

fn exact_minimal(q: u32, n: u32, r: u32, opts: &SearchOptions) -> Result<(Vec<u64>, u64), Error> {
    let mut ctx = ExactContext::build(q, n, r, opts)?;
    let lb = sphere_covering_bound(q, n, r)?
        .to_u64()
        .unwrap_or(ctx.space as u64)
        .max(1) as usize;
    for k in lb..=ctx.space {
        if let Some(code) = ctx.feasible(k)? {
            return Ok((code, ctx.nodes));
        }
    }
    Err(Error::Internal(
        "the full space is always a cover; unreachable".into(),
    ))
}

struct ExactContext {
    space: usize,
    balls: Vec<u128>,
    full: u128,
    volume: u32,
    nodes: u64,
    budget: u64,
}

impl ExactContext {
    fn build(q: u32, n: u32, r: u32, opts: &SearchOptions) -> Result<Self, Error> {
        let space = space_size(q, n)?;
        let cap = opts.exact_space_cap.min(EXACT_HARD_CAP);
        if space > cap {
            return Err(Error::ExactCapExceeded { space, cap });
        }
        let s = space as usize;
        let balls: Vec<u128> = (0..s)
            .map(|i| {
                let mut mask = 0u128;
                for j in 0..s {
                    if index_distance(i as u64, j as u64, q, n) <= r {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        let full = if s == 128 {
            u128::MAX
        } else {
            (1u128 << s) - 1
        };
        let volume = balls_volume(&balls);
        Ok(ExactContext {
            space: s,
            balls,
            full,
            volume,
            nodes: 0,
            budget: opts.budget,
        })
    }

    /// Search for a cover of exactly `k` codewords containing outcome 0;
    /// translation symmetry makes that restriction lossless.
    fn feasible(&mut self, k: usize) -> Result<Option<Vec<u64>>, Error> {
        let mut chosen = vec![0usize];
        let covered = self.balls[0];
        self.dfs(&mut chosen, covered, k)
    }

    fn dfs(
        &mut self,
        chosen: &mut Vec<usize>,
        covered: u128,
        k: usize,
    ) -> Result<Option<Vec<u64>>, Error> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        if covered == self.full {
            return Ok(Some(chosen.iter().map(|&c| c as u64).collect()));
        }
        if chosen.len() == k {
            return Ok(None);
        }
        let uncovered = self.full & !covered;
        let needed = uncovered.count_ones();
        let slots = (k - chosen.len()) as u32;
        if slots.saturating_mul(self.volume) < needed {
            return Ok(None);
        }
        // Balls all have the same volume, so every uncovered outcome has the
        // same number of covering candidates; take the smallest.
        let target = uncovered.trailing_zeros() as usize;
        let mut candidates: Vec<(Reverse<u32>, usize)> = Vec::with_capacity(self.volume as usize);
        let mut mask = self.balls[target];
        while mask != 0 {
            let c = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            let gain = (self.balls[c] & uncovered).count_ones();
            candidates.push((Reverse(gain), c));
        }
        candidates.sort_unstable();
        for &(_, c) in &candidates {
            chosen.push(c);
            let found = self.dfs(chosen, covered | self.balls[c], k)?;
            chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn balls_volume(balls: &[u128]) -> u32 {
    balls.first().map(|b| b.count_ones()).unwrap_or(0)
}

/// Visit every outcome within distance `r` of `center` (including itself).
fn for_each_in_ball(center: u64, q: u32, n: u32, r: u32, powers: &[u64], f: &mut impl FnMut(u64)) {
    fn rec(
        value: u64,
        pos: usize,
        rem: u32,
        q: u64,
        powers: &[u64],
        f: &mut impl FnMut(u64),
    ) {
        if pos == powers.len() {
            f(value);
            return;
        }
        rec(value, pos + 1, rem, q, powers, f);
        if rem > 0 {
            let power = powers[pos];
            let digit = (value / power) % q;
            let base = value - digit * power;
            for d in 0..q {
                if d != digit {
                    rec(base + d * power, pos + 1, rem - 1, q, powers, f);
                }
            }
        }
    }
    if r == 1 {
        // fast path: the center plus its n(q-1) neighbors
        f(center);
        let q = q as u64;
        for &power in powers {
            let digit = (center / power) % q;
            let base = center - digit * power;
            for d in 0..q {
                if d != digit {
                    f(base + d * power);
                }
            }
        }
        return;
    }
    let _ = n;
    rec(center, 0, r, q as u64, powers, f);
}

struct BallGeometry {
    q: u32,
    n: u32,
    r: u32,
    powers: Vec<u64>,
    volume: u64,
}

impl BallGeometry {
    fn new(q: u32, n: u32, r: u32) -> Self {
        let mut powers = Vec::with_capacity(n as usize);
        let mut p = 1u64;
        for _ in 0..n {
            powers.push(p);
            p = p.saturating_mul(q as u64);
        }
        let mut volume = 0u64;
        let mut term = 1u64;
        for i in 0..=r.min(n) {
            if i > 0 {
                term = term * (n as u64 - i as u64 + 1) / i as u64 * (q as u64 - 1);
            }
            volume += term;
        }
        BallGeometry {
            q,
            n,
            r,
            powers,
            volume,
        }
    }

    fn for_each(&self, center: u64, f: &mut impl FnMut(u64)) {
        for_each_in_ball(center, self.q, self.n, self.r, &self.powers, f);
    }
}

/// Mutable cover state for the repair walk: membership, per-outcome cover
/// counts, and an O(1)-sample list of uncovered outcomes.
#[derive(Clone)]
struct CoverState {
    members: Vec<u64>,
    counts: Vec<u16>,
    uncovered: Vec<u32>,
    position: Vec<u32>,
}

const COVERED: u32 = u32::MAX;

impl CoverState {
    fn new(space: u64, members: &[u64], geom: &BallGeometry) -> Self {
        let mut state = CoverState {
            members: Vec::with_capacity(members.len()),
            counts: vec![0; space as usize],
            uncovered: (0..space as u32).collect(),
            position: (0..space as u32).collect(),
        };
        for &m in members {
            state.add(m, geom);
        }
        state
    }

    fn cost(&self) -> usize {
        self.uncovered.len()
    }

    fn mark_covered(&mut self, x: u64) {
        let pos = self.position[x as usize];
        debug_assert_ne!(pos, COVERED);
        let last = *self.uncovered.last().expect("nonempty uncovered list");
        self.uncovered.swap_remove(pos as usize);
        if (last as u64) != x {
            self.position[last as usize] = pos;
        }
        self.position[x as usize] = COVERED;
    }

    fn mark_uncovered(&mut self, x: u64) {
        debug_assert_eq!(self.position[x as usize], COVERED);
        self.position[x as usize] = self.uncovered.len() as u32;
        self.uncovered.push(x as u32);
    }

    fn add(&mut self, codeword: u64, geom: &BallGeometry) {
        let counts = &mut self.counts;
        let mut newly = Vec::new();
        geom.for_each(codeword, &mut |x| {
            counts[x as usize] += 1;
            if counts[x as usize] == 1 {
                newly.push(x);
            }
        });
        for x in newly {
            self.mark_covered(x);
        }
        self.members.push(codeword);
    }

    fn remove_at(&mut self, index: usize, geom: &BallGeometry) {
        let codeword = self.members.swap_remove(index);
        let counts = &mut self.counts;
        let mut lost = Vec::new();
        geom.for_each(codeword, &mut |x| {
            counts[x as usize] -= 1;
            if counts[x as usize] == 0 {
                lost.push(x);
            }
        });
        for x in lost {
            self.mark_uncovered(x);
        }
    }

    /// Outcomes that would become uncovered if `codeword` were removed.
    fn removal_loss(&self, codeword: u64, geom: &BallGeometry) -> u32 {
        let mut loss = 0;
        geom.for_each(codeword, &mut |x| {
            if self.counts[x as usize] == 1 {
                loss += 1;
            }
        });
        loss
    }

    /// Uncovered outcomes that `codeword` would newly cover.
    fn addition_gain(&self, codeword: u64, geom: &BallGeometry) -> u32 {
        let mut gain = 0;
        geom.for_each(codeword, &mut |x| {
            if self.counts[x as usize] == 0 {
                gain += 1;
            }
        });
        gain
    }
}

/// Greedy max-coverage seeding with lazy gain re-evaluation; deterministic
/// with ties broken toward the smallest outcome index.
fn greedy_cover(space: u64, geom: &BallGeometry) -> (Vec<u64>, u64) {
    let mut covered = vec![false; space as usize];
    let mut covered_cnt = 0u64;
    let mut nodes = 0u64;
    let mut picks = Vec::new();
    let mut heap: BinaryHeap<(u64, Reverse<u64>)> =
        (0..space).map(|i| (geom.volume, Reverse(i))).collect();
    while covered_cnt < space {
        let (stale_gain, Reverse(c)) = heap.pop().expect("uncovered outcomes imply candidates");
        nodes += 1;
        let mut fresh = 0u64;
        geom.for_each(c, &mut |x| {
            if !covered[x as usize] {
                fresh += 1;
            }
        });
        if fresh == 0 {
            continue;
        }
        if fresh == stale_gain {
            picks.push(c);
            geom.for_each(c, &mut |x| {
                if !covered[x as usize] {
                    covered[x as usize] = true;
                    covered_cnt += 1;
                }
            });
        } else {
            heap.push((fresh, Reverse(c)));
        }
    }
    (picks, nodes)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn restart_seed(seed: u64, k: usize, restart: u32) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ k as u64) ^ restart as u64)
}

/// Swap-walk repair at fixed size: pick a random uncovered outcome, swap in
/// a codeword that covers it, swap out the cheapest member (with occasional
/// random moves to escape plateaus). Returns a full cover or `None`.
fn repair_walk(
    mut state: CoverState,
    geom: &BallGeometry,
    rng: &mut ChaCha8Rng,
    max_moves: u64,
) -> (Option<Vec<u64>>, u64) {
    let mut nodes = 0u64;
    for _ in 0..max_moves {
        if state.cost() == 0 {
            let mut members = state.members;
            members.sort_unstable();
            return (Some(members), nodes);
        }
        let target = state.uncovered[rng.gen_range(0..state.uncovered.len())] as u64;
        let mut candidates = Vec::with_capacity(geom.volume as usize);
        geom.for_each(target, &mut |c| candidates.push(c));
        nodes += candidates.len() as u64;
        let incoming = if rng.gen::<f64>() < WALK_NOISE {
            candidates[rng.gen_range(0..candidates.len())]
        } else {
            candidates
                .iter()
                .map(|&c| (Reverse(state.addition_gain(c, geom)), c))
                .min()
                .map(|(_, c)| c)
                .expect("ball is never empty")
        };
        state.add(incoming, geom);

        // never remove the codeword just added
        let removable = state.members.len() - 1;
        nodes += removable as u64;
        let out_index = if rng.gen::<f64>() < WALK_NOISE {
            rng.gen_range(0..removable)
        } else {
            (0..removable)
                .map(|i| (state.removal_loss(state.members[i], geom), state.members[i], i))
                .min()
                .map(|(_, _, i)| i)
                .expect("cover has at least one removable member")
        };
        state.remove_at(out_index, geom);
    }
    if state.cost() == 0 {
        let mut members = state.members;
        members.sort_unstable();
        (Some(members), nodes)
    } else {
        (None, nodes)
    }
}

fn heuristic_cover(
    q: u32,
    n: u32,
    r: u32,
    opts: &SearchOptions,
    limits: &Limits,
) -> Result<(Vec<u64>, u64), Error> {
    let space = space_size(q, n)?;
    limits.check(space)?;
    if space > HEURISTIC_SPACE_CAP {
        return Err(Error::SpaceTooLarge {
            space,
            limit: HEURISTIC_SPACE_CAP,
        });
    }
    let geom = BallGeometry::new(q, n, r);
    let (mut best, mut nodes) = greedy_cover(space, &geom);
    best.sort_unstable();
    let lower = sphere_covering_bound(q, n, r)?.to_u64().unwrap_or(space).max(1);

    loop {
        if let Some(target) = opts.target_size {
            if best.len() <= target {
                break;
            }
        }
        if best.len() as u64 <= lower || nodes >= opts.budget {
            break;
        }
        let k = best.len() - 1;

        // deterministic shrink of the incumbent to size k, shared by every
        // restart in the batch
        let mut template = CoverState::new(space, &best, &geom);
        let (_, victim_index) = template
            .members
            .iter()
            .enumerate()
            .map(|(i, &c)| ((template.removal_loss(c, &geom), c), i))
            .min()
            .expect("incumbent is nonempty");
        template.remove_at(victim_index, &geom);

        let results: Vec<(Option<Vec<u64>>, u64)> = (0..opts.restarts)
            .into_par_iter()
            .map(|restart| {
                let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(opts.seed, k, restart));
                repair_walk(template.clone(), &geom, &mut rng, opts.moves_per_restart)
            })
            .collect();
        nodes += results.iter().map(|(_, n)| n).sum::<u64>();
        match results.into_iter().find_map(|(sol, _)| sol) {
            Some(solution) => best = solution,
            None => break,
        }
    }
    Ok((best, nodes))
}

fn binomial_capped(n: u64, k: u64, limit: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
        if result > limit as u128 {
            return limit.saturating_add(1);
        }
    }
    result as u64
}

enum DistanceOracle {
    Matrix { table: Vec<u8>, space: usize },
    Lazy { q: u32, n: u32 },
}

impl DistanceOracle {
    fn new(q: u32, n: u32, space: u64) -> Self {
        if space <= 4096 {
            let s = space as usize;
            let mut table = vec![0u8; s * s];
            for a in 0..s {
                for b in 0..s {
                    table[a * s + b] = index_distance(a as u64, b as u64, q, n) as u8;
                }
            }
            DistanceOracle::Matrix { table, space: s }
        } else {
            DistanceOracle::Lazy { q, n }
        }
    }

    #[inline]
    fn dist(&self, a: u64, b: u64) -> u32 {
        match self {
            DistanceOracle::Matrix { table, space } => {
                table[a as usize * space + b as usize] as u32
            }
            DistanceOracle::Lazy { q, n } => index_distance(a, b, *q, *n),
        }
    }
}

/// Minimal distance sum over all winning sets of the given size that
/// contain outcome 0 (lossless restriction by translation symmetry),
/// enumerated in lexicographic order so ties resolve to the smallest set.
fn best_sum_with_zero(
    q: u32,
    n: u32,
    w_size: u64,
    oracle: &DistanceOracle,
    budget: &mut u64,
) -> Result<(u64, Vec<u64>), Error> {
    let space = space_size(q, n)?;
    let extra = w_size - 1;
    let combos = binomial_capped(space - 1, extra, *budget);
    if combos > *budget {
        return Err(Error::BudgetExceeded { budget: *budget });
    }
    *budget -= combos;

    let mut best_sum = u64::MAX;
    let mut best_members: Vec<u64> = Vec::new();
    let evaluate = |members: &[u64]| {
        let mut sum = 0u64;
        for x in 0..space {
            let mut d = oracle.dist(x, 0);
            for &w in members {
                d = d.min(oracle.dist(x, w));
                if d == 0 {
                    break;
                }
            }
            sum += d as u64;
        }
        sum
    };
    if extra == 0 {
        let sum = evaluate(&[]);
        return Ok((sum, vec![0]));
    }
    for combo in (1..space).combinations(extra as usize) {
        let sum = evaluate(&combo);
        if sum < best_sum {
            best_sum = sum;
            best_members = combo;
        }
    }
    let mut members = vec![0];
    members.extend(best_members);
    Ok((best_sum, members))
}

/// The frame maximizing the near-miss index over all winning sets of size
/// `w_size`, by exhaustive enumeration with the first winner pinned to the
/// all-zero outcome. Errors with the offending bound when the subset count
/// exceeds the node budget.
pub fn optimal_frame(
    q: u32,
    n: u32,
    w_size: u64,
    opts: &SearchOptions,
    limits: &Limits,
) -> Result<(LotteryFrame, Rational), Error> {
    let space = space_size(q, n)?;
    limits.check(space)?;
    if w_size < 1 || w_size > space {
        return Err(Error::InvalidParameter(format!(
            "winning-set size {w_size} not in 1..={space}"
        )));
    }
    if w_size == space {
        let frame = LotteryFrame::full(q, n, limits)?;
        return Ok((frame, ratio_u64(1, 1)));
    }
    let oracle = DistanceOracle::new(q, n, space);
    let mut budget = opts.budget;
    let (best_sum, members) = best_sum_with_zero(q, n, w_size, &oracle, &mut budget)?;
    let frame = LotteryFrame::new(q, n, members.into_iter().map(OutcomeIndex).collect())?;
    let index = Rational::one() - ratio_u64(best_sum, n as u64 * space);
    Ok((frame, index))
}

/// Entry `m-1` is the minimal `Σ_x min_{w∈W} d(x, w)` over all winning sets
/// of size `m`. Fully exhaustive over all subsets for spaces of at most 16
/// outcomes; symmetry-reduced enumeration under the node budget up to 64.
pub fn min_distance_sum_curve(
    q: u32,
    n: u32,
    opts: &SearchOptions,
) -> Result<Vec<u64>, Error> {
    let space = space_size(q, n)?;
    if space > 64 {
        return Err(Error::ExactCapExceeded { space, cap: 64 });
    }
    let oracle = DistanceOracle::new(q, n, space);
    let s = space as usize;
    if space <= 16 {
        let mut curve = vec![u64::MAX; s];
        for mask in 1u32..(1u32 << s) {
            let m = mask.count_ones() as usize;
            let mut sum = 0u64;
            for x in 0..s {
                let mut best = u32::MAX;
                let mut bits = mask;
                while bits != 0 {
                    let w = bits.trailing_zeros() as u64;
                    bits &= bits - 1;
                    best = best.min(oracle.dist(x as u64, w));
                    if best == 0 {
                        break;
                    }
                }
                sum += best as u64;
            }
            if sum < curve[m - 1] {
                curve[m - 1] = sum;
            }
        }
        return Ok(curve);
    }
    let mut budget = opts.budget;
    let mut curve = Vec::with_capacity(s);
    for m in 1..=space {
        let (sum, _) = best_sum_with_zero(q, n, m, &oracle, &mut budget)?;
        curve.push(sum);
    }
    Ok(curve)
}

/// Nonnegative second differences.
pub fn is_convex(values: &[u64]) -> bool {
    values
        .windows(3)
        .all(|w| w[0] as i128 + w[2] as i128 >= 2 * w[1] as i128)
}

/// The greedy incremental frame sequence `W_1 ⊂ W_2 ⊂ …`: start from the
/// all-zero outcome, and at every step add the outcome with the greatest
/// reduction in the distance sum, ties broken toward the smallest index.
/// Returns the frame and exact index at every size.
pub fn greedy_frame_path(
    q: u32,
    n: u32,
    limits: &Limits,
) -> Result<Vec<(LotteryFrame, Rational)>, Error> {
    let space = space_size(q, n)?;
    limits.check(space)?;
    if space > GREEDY_PATH_CAP {
        return Err(Error::SpaceTooLarge {
            space,
            limit: GREEDY_PATH_CAP,
        });
    }
    let oracle = DistanceOracle::new(q, n, space);
    let s = space as usize;
    let total_weight = (n as u64) * space;

    let mut dist: Vec<u32> = (0..space).map(|x| oracle.dist(x, 0)).collect();
    let mut sum: u64 = dist.iter().map(|&d| d as u64).sum();
    // reduction[c] = how much the distance sum would drop if c were added
    let mut reduction: Vec<u64> = (0..space)
        .map(|c| {
            (0..space)
                .map(|x| dist[x as usize].saturating_sub(oracle.dist(x, c)) as u64)
                .sum()
        })
        .collect();
    let mut member = vec![false; s];
    member[0] = true;

    let mut winners = vec![OutcomeIndex(0)];
    let mut path = Vec::with_capacity(s);
    let index_of = |sum: u64| Rational::one() - ratio_u64(sum, total_weight);
    path.push((
        LotteryFrame::new(q, n, winners.clone())?,
        index_of(sum),
    ));

    for _ in 1..s {
        let (_, pick) = (0..space)
            .filter(|&c| !member[c as usize])
            .map(|c| (Reverse(reduction[c as usize]), c))
            .min()
            .expect("non-members remain");
        member[pick as usize] = true;
        sum -= reduction[pick as usize];
        // settle the new distances and re-derive each candidate's reduction
        for x in 0..space {
            let nd = oracle.dist(x, pick);
            let old = dist[x as usize];
            if nd < old {
                dist[x as usize] = nd;
                for c in 0..space {
                    let dc = oracle.dist(x, c);
                    let before = old.saturating_sub(dc) as u64;
                    let after = nd.saturating_sub(dc) as u64;
                    reduction[c as usize] -= before - after;
                }
            }
        }
        winners.push(OutcomeIndex(pick));
        path.push((
            LotteryFrame::new(q, n, winners.clone())?,
            index_of(sum),
        ));
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn exact_minimal_binary_codes() {
        let cases = [(3u32, 1u32, 2u64), (4, 1, 4), (3, 2, 2), (5, 2, 2)];
        for (n, r, expected) in cases {
            let cert =
                minimal_covering_code(2, n, r, SearchMode::Exact, &opts(), &lim()).unwrap();
            assert_eq!(cert.kind, CertificateKind::ExactMinimal);
            assert_eq!(cert.frame.win_count(), expected, "K_2({n},{r})");
            assert!(cert.verified_radius <= r);
            assert!(cert.seed.is_none());
        }
    }

    #[test]
    fn exact_single_codeword_cases() {
        // any single ball of radius >= n covers the space
        let cert = minimal_covering_code(2, 2, 2, SearchMode::Exact, &opts(), &lim()).unwrap();
        assert_eq!(cert.frame.win_count(), 1);
        let cert = minimal_covering_code(2, 1, 1, SearchMode::Exact, &opts(), &lim()).unwrap();
        assert_eq!(cert.frame.win_count(), 1);
    }

    #[test]
    fn exact_refuses_large_spaces() {
        assert!(matches!(
            minimal_covering_code(2, 8, 1, SearchMode::Exact, &opts(), &lim()),
            Err(Error::ExactCapExceeded { space: 256, .. })
        ));
    }

    #[test]
    fn exact_respects_budget() {
        let tight = SearchOptions {
            budget: 3,
            ..opts()
        };
        assert!(matches!(
            minimal_covering_code(2, 5, 1, SearchMode::Exact, &tight, &lim()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn heuristic_finds_small_covers() {
        let cert =
            minimal_covering_code(2, 4, 1, SearchMode::Heuristic, &opts(), &lim()).unwrap();
        assert_eq!(cert.kind, CertificateKind::UpperBoundWitness);
        assert!(cert.verified_radius <= 1);
        assert_eq!(cert.frame.win_count(), 4);
        assert_eq!(cert.seed, Some(0));
    }

    #[test]
    fn heuristic_is_seed_deterministic() {
        let options = SearchOptions {
            seed: 11,
            ..opts()
        };
        let a = minimal_covering_code(3, 3, 1, SearchMode::Heuristic, &options, &lim()).unwrap();
        let b = minimal_covering_code(3, 3, 1, SearchMode::Heuristic, &options, &lim()).unwrap();
        assert_eq!(a.frame, b.frame);
        assert_eq!(a.nodes_explored, b.nodes_explored);
    }

    #[test]
    fn cover_existence_decisions() {
        assert!(!cover_exists(2, 3, 1, 1, &opts()).unwrap());
        assert!(cover_exists(2, 3, 1, 2, &opts()).unwrap());
        // needs K_2(6,1) <= 8? sphere bound says 10, so 8 is impossible
        assert!(!cover_exists(2, 6, 1, 8, &opts()).unwrap());
    }

    #[test]
    fn optimal_frame_examples() {
        let (frame, index) = optimal_frame(2, 3, 2, &opts(), &lim()).unwrap();
        assert_eq!(index, ratio(3, 4));
        assert_eq!(
            frame.winners(),
            &[OutcomeIndex(0), OutcomeIndex(7)],
            "antipodal pair"
        );
        let (_, index) = optimal_frame(2, 2, 1, &opts(), &lim()).unwrap();
        assert_eq!(index, ratio(1, 2));
        let (frame, index) = optimal_frame(2, 2, 4, &opts(), &lim()).unwrap();
        assert_eq!(index, ratio(1, 1));
        assert!(frame.is_full());
    }

    #[test]
    fn optimal_frame_names_budget_when_exceeded() {
        let tight = SearchOptions {
            budget: 10,
            ..opts()
        };
        assert!(matches!(
            optimal_frame(2, 4, 8, &tight, &lim()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn curve_small_cases() {
        let curve = min_distance_sum_curve(2, 2, &opts()).unwrap();
        assert_eq!(curve, vec![4, 2, 1, 0]);
        let curve = min_distance_sum_curve(2, 3, &opts()).unwrap();
        assert_eq!(curve[0], 12); // n(q-1)q^{n-1}
        assert_eq!(*curve.last().unwrap(), 0);
        assert!(is_convex(&curve));
    }

    #[test]
    fn curve_agrees_with_optimal_frame() {
        let curve = min_distance_sum_curve(2, 3, &opts()).unwrap();
        for m in 1..=8u64 {
            let (_, index) = optimal_frame(2, 3, m, &opts(), &lim()).unwrap();
            let expected = Rational::one() - ratio_u64(curve[m as usize - 1], 3 * 8);
            assert_eq!(index, expected, "m={m}");
        }
    }

    #[test]
    fn greedy_path_on_three_reels() {
        let path = greedy_frame_path(2, 3, &lim()).unwrap();
        assert_eq!(path.len(), 8);
        // the first addition is the antipode of the all-zero start
        assert_eq!(
            path[1].0.winners(),
            &[OutcomeIndex(0), OutcomeIndex(7)]
        );
        assert_eq!(path[1].1, ratio(3, 4));
        assert_eq!(path.last().unwrap().1, ratio(1, 1));
        for pair in path.windows(2) {
            assert!(pair[1].1 >= pair[0].1, "indices are non-decreasing");
        }
    }

    #[test]
    fn convexity_helper() {
        assert!(is_convex(&[4, 2, 1, 0]));
        assert!(!is_convex(&[4, 1, 1, 0]));
    }
}
