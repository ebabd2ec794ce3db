//! Log sampling methods for the bootstrap: plain resampling with
//! replacement, and semiparametric sampling that breeds new traces by
//! crossover at shared subtraces.
//!
//! The crossover of `t1` at site `p1` with `t2` at site `p2` over a shared
//! subtrace of length `k` is `prefix(t1, p1 + k - 1) ∘ suffix(t2, p2 + k)`.
//! For `a b b b c f` with itself at sites 2 and 3 (`k = 2`) this yields
//! `a b b c f`; swapping the parents yields `a b b b b c f`.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::trace::{Action, EventLog, Trace};

/// A pair of 1-indexed positions at which two traces share a subtrace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BreedingSite {
    pub p1: usize,
    pub p2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    /// Traces per sample log.
    pub n: usize,
    /// Breeding generations.
    pub g: usize,
    /// Length of the shared subtrace at a breeding site.
    pub k: usize,
    /// Breeding probability.
    pub p: f64,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            n: 1000,
            g: 10_000,
            k: 2,
            p: 1.0,
            seed: 0,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidConfig(
                "sample size n must be at least 1".into(),
            ));
        }
        if self.k < 1 {
            return Err(Error::InvalidConfig(
                "subtrace length k must be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidConfig(
                "breeding probability p must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// Which log sampling method a bootstrap uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogSampler {
    Replacement,
    Breeding,
}

impl LogSampler {
    pub fn sample<R: Rng>(
        &self,
        log: &EventLog,
        cfg: &SamplerConfig,
        rng: &mut R,
    ) -> Result<EventLog> {
        match self {
            LogSampler::Replacement => sample_with_replacement(log, cfg.n, rng),
            LogSampler::Breeding => sample_with_breeding(log, cfg, rng),
        }
    }
}

/// Draws one trace occurrence uniformly: a trace of multiplicity `c` comes
/// up with probability `c / |L|`.
pub fn rand_trace<R: Rng>(log: &EventLog, rng: &mut R) -> Result<Trace> {
    let picker = Picker::new(log)?;
    Ok(picker.pick(rng).clone())
}

pub fn sample_with_replacement<R: Rng>(log: &EventLog, n: usize, rng: &mut R) -> Result<EventLog> {
    let picker = Picker::new(log)?;
    let mut out = EventLog::new();
    for _ in 0..n {
        out.insert(picker.pick(rng).clone(), 1);
    }
    Ok(out)
}

/// All breeding sites of `t1` and `t2` for shared subtraces of length `k`,
/// in the order of a scan over `p1` then `p2`.
pub fn breeding_sites(t1: &Trace, t2: &Trace, k: usize) -> Vec<BreedingSite> {
    let mut out = Vec::new();
    for_each_site(t1.actions(), t2.actions(), k, |i, j| {
        out.push(BreedingSite {
            p1: i + 1,
            p2: j + 1,
        })
    });
    out
}

pub fn crossover(t1: &Trace, p1: usize, t2: &Trace, p2: usize, k: usize) -> Result<Trace> {
    let invalid = Error::InvalidSite { p1, p2, k };
    if k < 1 || p1 < 1 || p2 < 1 {
        return Err(invalid);
    }
    match (t1.subtrace(p1, k), t2.subtrace(p2, k)) {
        (Ok(a), Ok(b)) if a == b => {}
        _ => return Err(invalid),
    }
    Ok(t1.prefix(p1 + k - 1)?.concat(&t2.suffix(p2 + k)?))
}

/// Breeds `l1` with `l2`.
///
/// Runs `⌈|l1| / 2⌉` rounds. Each round draws one parent from each log;
/// with probability `p`, and if the parents share a breeding site, a site
/// is picked uniformly and both offspring are kept, otherwise the parents
/// themselves are kept. The result holds `2⌈|l1| / 2⌉` traces.
pub fn log_breeding<R: Rng>(
    l1: &EventLog,
    l2: &EventLog,
    k: usize,
    p: f64,
    rng: &mut R,
) -> Result<EventLog> {
    if l1.is_empty() || l2.is_empty() {
        return Err(Error::EmptyLog);
    }
    let mut pool = TracePool::default();
    let first = pool.flatten(l1);
    let second = pool.flatten(l2);
    let mut scratch = Vec::new();
    let bred = pool.breed(&first, &second, k, p, rng, &mut scratch);
    Ok(pool.to_log(bred.iter().copied()))
}

/// Semiparametric sampling: `g` generations of breeding the input log with
/// the previous generation, then `n` draws with replacement from the
/// multiset union of all generations (including the input).
pub fn sample_with_breeding<R: Rng>(
    log: &EventLog,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<EventLog> {
    cfg.validate()?;
    if log.is_empty() {
        return Err(Error::EmptyLog);
    }
    let mut pool = TracePool::default();
    let base = pool.flatten(log);
    let mut union = base.clone();
    union.reserve(cfg.g * (base.len() + 1));
    let mut previous = base.clone();
    let mut scratch = Vec::new();
    for _ in 0..cfg.g {
        let next = pool.breed(&base, &previous, cfg.k, cfg.p, rng, &mut scratch);
        union.extend_from_slice(&next);
        previous = next;
    }
    let draws = (0..cfg.n).map(|_| union[rng.gen_range(0..union.len())]);
    Ok(pool.to_log(draws))
}

fn for_each_site<T: PartialEq>(t1: &[T], t2: &[T], k: usize, mut f: impl FnMut(usize, usize)) {
    if k == 0 || k > t1.len() || k > t2.len() {
        return;
    }
    for i in 0..=t1.len() - k {
        for j in 0..=t2.len() - k {
            if t1[i..i + k] == t2[j..j + k] {
                f(i, j);
            }
        }
    }
}

/// Uniform occurrence draws from a log by binary search over cumulative
/// multiplicities.
struct Picker<'a> {
    traces: Vec<&'a Trace>,
    cumulative: Vec<u64>,
    size: u64,
}

impl<'a> Picker<'a> {
    fn new(log: &'a EventLog) -> Result<Self> {
        if log.is_empty() {
            return Err(Error::EmptyLog);
        }
        let mut traces = Vec::with_capacity(log.distinct());
        let mut cumulative = Vec::with_capacity(log.distinct());
        let mut total = 0;
        for (t, c) in log.iter() {
            total += c;
            traces.push(t);
            cumulative.push(total);
        }
        Ok(Picker {
            traces,
            cumulative,
            size: total,
        })
    }

    fn pick<R: Rng>(&self, rng: &mut R) -> &'a Trace {
        let u = rng.gen_range(0..self.size);
        self.traces[self.cumulative.partition_point(|&c| c <= u)]
    }
}

type TraceId = u32;

/// Interned actions and traces, so breeding shuffles integer ids instead of
/// strings.
#[derive(Default)]
struct TracePool {
    actions: Vec<Action>,
    action_ids: HashMap<Action, u32>,
    traces: Vec<Box<[u32]>>,
    trace_ids: HashMap<Box<[u32]>, TraceId>,
}

impl TracePool {
    fn intern(&mut self, symbols: &[u32]) -> TraceId {
        if let Some(&id) = self.trace_ids.get(symbols) {
            return id;
        }
        let id = self.traces.len() as TraceId;
        let boxed: Box<[u32]> = symbols.into();
        self.traces.push(boxed.clone());
        self.trace_ids.insert(boxed, id);
        id
    }

    fn intern_trace(&mut self, trace: &Trace) -> TraceId {
        let symbols: Vec<u32> = trace
            .iter()
            .map(|a| match self.action_ids.get(a) {
                Some(&s) => s,
                None => {
                    let s = self.actions.len() as u32;
                    self.actions.push(a.clone());
                    self.action_ids.insert(a.clone(), s);
                    s
                }
            })
            .collect();
        self.intern(&symbols)
    }

    /// One id per trace occurrence, in log order.
    fn flatten(&mut self, log: &EventLog) -> Vec<TraceId> {
        let mut out = Vec::with_capacity(log.size() as usize);
        for (t, c) in log.iter() {
            let id = self.intern_trace(t);
            out.extend(std::iter::repeat_n(id, c as usize));
        }
        out
    }

    fn to_log(&self, ids: impl Iterator<Item = TraceId>) -> EventLog {
        let mut counts: HashMap<TraceId, u64> = HashMap::new();
        for id in ids {
            *counts.entry(id).or_insert(0) += 1;
        }
        counts
            .into_iter()
            .map(|(id, c)| {
                let trace = self.traces[id as usize]
                    .iter()
                    .map(|&s| self.actions[s as usize].clone())
                    .collect();
                (trace, c)
            })
            .collect()
    }

    fn breed<R: Rng>(
        &mut self,
        l1: &[TraceId],
        l2: &[TraceId],
        k: usize,
        p: f64,
        rng: &mut R,
        sites: &mut Vec<(usize, usize)>,
    ) -> Vec<TraceId> {
        let rounds = l1.len().div_ceil(2);
        let mut out = Vec::with_capacity(2 * rounds);
        let mut child = Vec::new();
        let mut sibling = Vec::new();
        for _ in 0..rounds {
            let a = l1[rng.gen_range(0..l1.len())];
            let b = l2[rng.gen_range(0..l2.len())];
            sites.clear();
            {
                let (t1, t2) = (&self.traces[a as usize], &self.traces[b as usize]);
                for_each_site(t1, t2, k, |i, j| sites.push((i, j)));
            }
            let roll: f64 = rng.gen();
            if (roll < p || p >= 1.0) && !sites.is_empty() {
                let (i, j) = sites[rng.gen_range(0..sites.len())];
                {
                    let (t1, t2) = (&self.traces[a as usize], &self.traces[b as usize]);
                    child.clear();
                    child.extend_from_slice(&t1[..i + k]);
                    child.extend_from_slice(&t2[j + k..]);
                    sibling.clear();
                    sibling.extend_from_slice(&t2[..j + k]);
                    sibling.extend_from_slice(&t1[i + k..]);
                }
                let first = self.intern(&child);
                let second = self.intern(&sibling);
                out.push(first);
                out.push(second);
            } else {
                out.push(a);
                out.push(b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(s: &str) -> Trace {
        Trace::from_letters(s).unwrap()
    }

    fn site(p1: usize, p2: usize) -> BreedingSite {
        BreedingSite { p1, p2 }
    }

    #[test]
    fn worked_offspring() {
        let parent = t("abbbcf");
        assert_eq!(crossover(&parent, 2, &parent, 3, 2).unwrap(), t("abbcf"));
        assert_eq!(crossover(&parent, 3, &parent, 2, 2).unwrap(), t("abbbbcf"));
    }

    #[test]
    fn six_sites_between_adeef_and_adefabcfadef() {
        let sites = breeding_sites(&t("adeef"), &t("adefabcfadef"), 2);
        assert_eq!(
            sites,
            vec![
                site(1, 1),
                site(1, 9),
                site(2, 2),
                site(2, 10),
                site(4, 3),
                site(4, 11)
            ]
        );
    }

    #[test]
    fn self_sites_of_abbbcf() {
        // Brute force: every (p1, p2) with equal length-2 windows.
        let w = t("abbbcf");
        let mut expected = Vec::new();
        for p1 in 1..=5 {
            for p2 in 1..=5 {
                if w.subtrace(p1, 2).unwrap() == w.subtrace(p2, 2).unwrap() {
                    expected.push(site(p1, p2));
                }
            }
        }
        assert_eq!(
            expected,
            vec![
                site(1, 1),
                site(2, 2),
                site(2, 3),
                site(3, 2),
                site(3, 3),
                site(4, 4),
                site(5, 5)
            ]
        );
        assert_eq!(breeding_sites(&w, &w, 2), expected);
    }

    #[test]
    fn no_sites_when_k_exceeds_a_length() {
        assert!(breeding_sites(&t("ab"), &t("abc"), 3).is_empty());
        assert!(breeding_sites(&t("ab"), &Trace::empty(), 1).is_empty());
    }

    #[test]
    fn self_crossover_at_same_site_is_identity() {
        let w = t("adefabcfadef");
        for s in breeding_sites(&w, &w, 2)
            .into_iter()
            .filter(|s| s.p1 == s.p2)
        {
            assert_eq!(crossover(&w, s.p1, &w, s.p2, 2).unwrap(), w);
        }
        assert_eq!(crossover(&w, 12, &w, 12, 1).unwrap(), w);
    }

    #[test]
    fn crossover_rejects_mismatched_sites() {
        let w = t("abbbcf");
        assert_eq!(
            crossover(&w, 1, &w, 2, 2),
            Err(Error::InvalidSite { p1: 1, p2: 2, k: 2 })
        );
        assert!(crossover(&w, 6, &w, 6, 2).is_err());
        assert!(crossover(&w, 0, &w, 0, 1).is_err());
    }

    #[test]
    fn empty_logs_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let empty = EventLog::new();
        let one: EventLog = [t("a")].into_iter().collect();
        assert_eq!(rand_trace(&empty, &mut rng), Err(Error::EmptyLog));
        assert_eq!(
            sample_with_replacement(&empty, 3, &mut rng),
            Err(Error::EmptyLog)
        );
        assert_eq!(
            log_breeding(&empty, &one, 1, 1.0, &mut rng),
            Err(Error::EmptyLog)
        );
        assert_eq!(
            log_breeding(&one, &empty, 1, 1.0, &mut rng),
            Err(Error::EmptyLog)
        );
        let cfg = SamplerConfig {
            n: 2,
            g: 1,
            k: 1,
            p: 1.0,
            seed: 0,
        };
        assert_eq!(
            sample_with_breeding(&empty, &cfg, &mut rng),
            Err(Error::EmptyLog)
        );
    }

    #[test]
    fn singleton_log_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let one: EventLog = [t("a")].into_iter().collect();
        assert_eq!(rand_trace(&one, &mut rng).unwrap(), t("a"));
        let s = sample_with_replacement(&one, 3, &mut rng).unwrap();
        assert_eq!(s.multiplicity(&t("a")), 3);
        assert_eq!(s.size(), 3);
    }

    #[test]
    fn weighted_draw_frequency() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let log: EventLog = [(t("a"), 99), (t("b"), 1)].into_iter().collect();
        let draws = 100_000;
        let hits = (0..draws)
            .filter(|_| rand_trace(&log, &mut rng).unwrap() == t("a"))
            .count();
        let freq = hits as f64 / draws as f64;
        assert!((0.98..1.0).contains(&freq), "{freq}");
    }

    #[test]
    fn odd_log_breeds_one_extra_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let log: EventLog = [(t("abc"), 3), (t("abd"), 2)].into_iter().collect();
        let out = log_breeding(&log, &log, 1, 0.5, &mut rng).unwrap();
        assert_eq!(out.size(), 6);
    }

    #[test]
    fn zero_probability_keeps_parents() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let log: EventLog = [(t("abbbcf"), 3), (t("adef"), 4)].into_iter().collect();
        let out = log_breeding(&log, &log, 1, 0.0, &mut rng).unwrap();
        assert_eq!(out.size(), 8);
        assert!(out.support().all(|tr| log.contains(tr)));
    }

    #[test]
    fn zero_generations_only_resample() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let log: EventLog = [(t("abbbcf"), 3), (t("adef"), 4)].into_iter().collect();
        let cfg = SamplerConfig {
            n: 50,
            g: 0,
            k: 2,
            p: 1.0,
            seed: 0,
        };
        let out = sample_with_breeding(&log, &cfg, &mut rng).unwrap();
        assert_eq!(out.size(), 50);
        assert!(out.support().all(|tr| log.contains(tr)));
    }

    #[test]
    fn breeding_invents_loop_unrollings() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let log: EventLog = [(t("abbbcf"), 5)].into_iter().collect();
        let cfg = SamplerConfig {
            n: 2000,
            g: 20,
            k: 2,
            p: 1.0,
            seed: 0,
        };
        let out = sample_with_breeding(&log, &cfg, &mut rng).unwrap();
        assert_eq!(out.size(), 2000);
        assert!(out.contains(&t("abbcf")));
        assert!(out.contains(&t("abbbbcf")));
    }

    #[test]
    fn config_validation() {
        let ok = SamplerConfig::default();
        assert!(ok.validate().is_ok());
        assert!(SamplerConfig { n: 0, ..ok }.validate().is_err());
        assert!(SamplerConfig { k: 0, ..ok }.validate().is_err());
        assert!(SamplerConfig { p: 1.5, ..ok }.validate().is_err());
        assert!(SamplerConfig { p: -0.1, ..ok }.validate().is_err());
    }
}
