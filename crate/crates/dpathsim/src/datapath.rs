//! Flow-cache state machine of the OVS kernel datapath.
//!
//! Every packet is charged four delays in order: fetching datapath CPU
//! counters, flow-table lookup, an upcall to the userspace daemon when the
//! lookup misses (the resolved rule is then cached), and the statistics
//! update. The four stage delays are drawn independently from the bound
//! [`StageDelayModel`]; a hit charges zero upcall delay.
//!
//! The datapath is single-threaded by contract, mirroring a single-core
//! OVS installation: packets are served strictly in arrival order and a
//! packet arriving while a prior one is in service waits. Waiting time is
//! recorded separately from the processing delay so delay distributions
//! stay comparable across workloads.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;

use crate::empirical::EmpiricalDistribution;
use crate::error::{Error, Result};

/// Opaque flow identifier: a (source, destination, packet-size class)
/// surrogate for the full 5-tuple. Packets of the same configured flow
/// always produce equal keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlowKey {
    pub src: u32,
    pub dst: u32,
    pub size_class: u32,
}

impl FlowKey {
    pub fn new(src: u32, dst: u32, size_class: u32) -> Self {
        FlowKey {
            src,
            dst,
            size_class,
        }
    }
}

impl fmt::Display for FlowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.src, self.dst, self.size_class)
    }
}

/// Per-entry flow statistics kept by the datapath (used time, packets,
/// bytes). Counters are non-decreasing while the entry stays installed.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FlowStats {
    pub packets: u64,
    pub bytes: u64,
    pub last_used_us: f64,
}

/// What to do when an install would exceed capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvictionPolicy {
    /// Evict the least-recently-used entry.
    Lru,
    /// Fail the install with a cache-full error.
    Reject,
}

#[derive(Debug, Clone)]
struct CacheEntry {
    stats: FlowStats,
    tick: u64,
}

/// Set of installed flow rules with per-entry statistics and a capacity
/// limit. Lookups never mutate membership; recency is advanced by installs
/// and statistics updates.
#[derive(Debug, Clone)]
pub struct FlowCache {
    entries: HashMap<FlowKey, CacheEntry>,
    recency: BTreeSet<(u64, FlowKey)>,
    capacity: usize,
    policy: EvictionPolicy,
    tick: u64,
    evicted_packets: u64,
    evicted_entries: u64,
}

/// Default flow-table capacity in entries.
pub const DEFAULT_CACHE_CAPACITY: usize = 8192;

impl FlowCache {
    /// Capacity must be at least one entry.
    pub fn new(capacity: usize, policy: EvictionPolicy) -> Self {
        assert!(capacity >= 1, "flow cache capacity must be >= 1");
        FlowCache {
            entries: HashMap::new(),
            recency: BTreeSet::new(),
            capacity,
            policy,
            tick: 0,
            evicted_packets: 0,
            evicted_entries: 0,
        }
    }

    /// Pure membership query.
    pub fn lookup(&self, key: &FlowKey) -> bool {
        self.entries.contains_key(key)
    }

    /// Installs a flow with zeroed statistics, evicting the LRU entry if
    /// the table is full and the policy allows it.
    pub fn install(&mut self, key: FlowKey) -> Result<()> {
        if self.entries.contains_key(&key) {
            return Err(Error::AlreadyInstalled { key });
        }
        if self.entries.len() == self.capacity {
            match self.policy {
                EvictionPolicy::Reject => return Err(Error::CacheFull { key }),
                EvictionPolicy::Lru => {
                    let &(tick, victim) = self.recency.first().expect("full cache has entries");
                    self.recency.remove(&(tick, victim));
                    let entry = self
                        .entries
                        .remove(&victim)
                        .expect("recency tracks entries");
                    self.evicted_packets += entry.stats.packets;
                    self.evicted_entries += 1;
                }
            }
        }
        self.tick += 1;
        self.entries.insert(
            key,
            CacheEntry {
                stats: FlowStats::default(),
                tick: self.tick,
            },
        );
        self.recency.insert((self.tick, key));
        Ok(())
    }

    /// Counts a packet against an installed flow: packets +1, bytes
    /// +`bytes`, last-used set to `now_us`. Refreshes recency.
    pub fn update_stats(&mut self, key: &FlowKey, bytes: u64, now_us: f64) -> Result<()> {
        self.tick += 1;
        let new_tick = self.tick;
        let entry = self
            .entries
            .get_mut(key)
            .ok_or(Error::MissingFlow { key: *key })?;
        let old_tick = entry.tick;
        entry.tick = new_tick;
        entry.stats.packets += 1;
        entry.stats.bytes += bytes;
        entry.stats.last_used_us = now_us;
        self.recency.remove(&(old_tick, *key));
        self.recency.insert((new_tick, *key));
        Ok(())
    }

    pub fn stats(&self, key: &FlowKey) -> Option<&FlowStats> {
        self.entries.get(key).map(|e| &e.stats)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Sum of packet counters over currently installed entries.
    pub fn installed_packet_total(&self) -> u64 {
        self.entries.values().map(|e| e.stats.packets).sum()
    }

    /// Packets accounted to entries that have since been evicted.
    pub fn evicted_packet_total(&self) -> u64 {
        self.evicted_packets
    }

    pub fn evicted_entry_count(&self) -> u64 {
        self.evicted_entries
    }
}

/// Which of the four datapath steps a delay belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    CpuCounters,
    Lookup,
    Upcall,
    StatsUpdate,
}

impl Stage {
    pub const ALL: [Stage; 4] = [
        Stage::CpuCounters,
        Stage::Lookup,
        Stage::Upcall,
        Stage::StatsUpdate,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Stage::CpuCounters => "cpu_counters",
            Stage::Lookup => "lookup",
            Stage::Upcall => "upcall",
            Stage::StatsUpdate => "stats_update",
        }
    }

    pub fn from_label(label: &str) -> Option<Stage> {
        Stage::ALL.into_iter().find(|s| s.label() == label)
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One empirical delay distribution per datapath stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageDelayModel {
    pub cpu_counters: EmpiricalDistribution,
    pub lookup: EmpiricalDistribution,
    pub upcall: EmpiricalDistribution,
    pub stats_update: EmpiricalDistribution,
}

impl StageDelayModel {
    pub fn stage(&self, stage: Stage) -> &EmpiricalDistribution {
        match stage {
            Stage::CpuCounters => &self.cpu_counters,
            Stage::Lookup => &self.lookup,
            Stage::Upcall => &self.upcall,
            Stage::StatsUpdate => &self.stats_update,
        }
    }

    /// A model whose four stages are single-valued distributions. Handy
    /// for exact-arithmetic tests and calibration checks.
    pub fn point_masses(cpu: f64, lookup: f64, upcall: f64, stats: f64) -> Result<Self> {
        Ok(StageDelayModel {
            cpu_counters: EmpiricalDistribution::from_samples(&[cpu])?,
            lookup: EmpiricalDistribution::from_samples(&[lookup])?,
            upcall: EmpiricalDistribution::from_samples(&[upcall])?,
            stats_update: EmpiricalDistribution::from_samples(&[stats])?,
        })
    }
}

/// One simulated packet: cache outcome, per-stage delays, and timing.
/// All times are microseconds since simulation start.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketRecord {
    pub id: u64,
    pub arrival_us: f64,
    pub key: FlowKey,
    pub cache_hit: bool,
    pub wait_us: f64,
    pub cpu_counters_us: f64,
    pub lookup_us: f64,
    pub upcall_us: f64,
    pub stats_update_us: f64,
    pub total_us: f64,
    pub departure_us: f64,
}

impl PacketRecord {
    pub fn stage_delay(&self, stage: Stage) -> f64 {
        match stage {
            Stage::CpuCounters => self.cpu_counters_us,
            Stage::Lookup => self.lookup_us,
            Stage::Upcall => self.upcall_us,
            Stage::StatsUpdate => self.stats_update_us,
        }
    }
}

/// Single-server datapath: flow cache plus the in-service clock.
#[derive(Debug, Clone)]
pub struct Datapath {
    cache: FlowCache,
    server_free_at_us: f64,
    next_packet_id: u64,
}

impl Datapath {
    pub fn new(cache: FlowCache) -> Self {
        Datapath {
            cache,
            server_free_at_us: 0.0,
            next_packet_id: 0,
        }
    }

    pub fn cache(&self) -> &FlowCache {
        &self.cache
    }

    /// Runs one packet through the four-step pipeline.
    ///
    /// Stage delays are drawn in pipeline order: CPU counters, lookup,
    /// upcall (miss only; the flow is installed immediately, no controller
    /// round-trip is modeled), statistics update. A failed install leaves
    /// the datapath unchanged apart from the consumed random draws.
    pub fn process_packet<R: Rng + ?Sized>(
        &mut self,
        model: &StageDelayModel,
        rng: &mut R,
        arrival_us: f64,
        key: FlowKey,
        bytes: u64,
    ) -> Result<PacketRecord> {
        debug_assert!(arrival_us.is_finite() && arrival_us >= 0.0);
        let cpu_counters_us = model.cpu_counters.sample(rng);
        let lookup_us = model.lookup.sample(rng);
        let cache_hit = self.cache.lookup(&key);
        let upcall_us = if cache_hit {
            0.0
        } else {
            let delay = model.upcall.sample(rng);
            self.cache.install(key)?;
            delay
        };
        let stats_update_us = model.stats_update.sample(rng);
        let total_us = cpu_counters_us + lookup_us + upcall_us + stats_update_us;

        let start_us = arrival_us.max(self.server_free_at_us);
        let wait_us = start_us - arrival_us;
        let departure_us = start_us + total_us;
        self.cache.update_stats(&key, bytes, departure_us)?;
        self.server_free_at_us = departure_us;

        let id = self.next_packet_id;
        self.next_packet_id += 1;
        Ok(PacketRecord {
            id,
            arrival_us,
            key,
            cache_hit,
            wait_us,
            cpu_counters_us,
            lookup_us,
            upcall_us,
            stats_update_us,
            total_us,
            departure_us,
        })
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn key(n: u32) -> FlowKey {
        FlowKey::new(0, 1, n)
    }

    #[test]
    fn lookup_on_empty_cache_misses() {
        let cache = FlowCache::new(4, EvictionPolicy::Lru);
        assert!(!cache.lookup(&key(1)));
    }

    #[test]
    fn lookup_after_install_hits() {
        let mut cache = FlowCache::new(4, EvictionPolicy::Lru);
        cache.install(key(1)).unwrap();
        assert!(cache.lookup(&key(1)));
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn duplicate_install_is_an_error() {
        let mut cache = FlowCache::new(4, EvictionPolicy::Lru);
        cache.install(key(1)).unwrap();
        assert!(matches!(
            cache.install(key(1)),
            Err(Error::AlreadyInstalled { .. })
        ));
    }

    #[test]
    fn install_at_capacity_evicts_lru() {
        let mut cache = FlowCache::new(2, EvictionPolicy::Lru);
        cache.install(key(1)).unwrap();
        cache.install(key(2)).unwrap();
        // Touch key 1 so key 2 becomes least recently used.
        cache.update_stats(&key(1), 10, 1.0).unwrap();
        cache.install(key(3)).unwrap();
        assert_eq!(cache.len(), 2);
        assert!(cache.lookup(&key(1)));
        assert!(!cache.lookup(&key(2)));
        assert!(cache.lookup(&key(3)));
        assert_eq!(cache.evicted_entry_count(), 1);
    }

    #[test]
    fn install_at_capacity_with_reject_policy_fails() {
        let mut cache = FlowCache::new(1, EvictionPolicy::Reject);
        cache.install(key(1)).unwrap();
        let err = cache.install(key(2)).unwrap_err();
        assert!(matches!(err, Error::CacheFull { key } if key == super::FlowKey::new(0, 1, 2)));
        assert!(cache.lookup(&key(1)));
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn update_stats_accumulates_counters() {
        let mut cache = FlowCache::new(4, EvictionPolicy::Lru);
        cache.install(key(1)).unwrap();
        cache.update_stats(&key(1), 576, 3.5).unwrap();
        assert_eq!(
            cache.stats(&key(1)),
            Some(&FlowStats {
                packets: 1,
                bytes: 576,
                last_used_us: 3.5
            })
        );
        cache.update_stats(&key(1), 56, 9.0).unwrap();
        cache.update_stats(&key(1), 56, 11.0).unwrap();
        let stats = cache.stats(&key(1)).unwrap();
        assert_eq!((stats.packets, stats.bytes), (3, 688));
        assert_eq!(stats.last_used_us, 11.0);
    }

    #[test]
    fn update_stats_on_missing_flow_fails() {
        let mut cache = FlowCache::new(4, EvictionPolicy::Lru);
        assert!(matches!(
            cache.update_stats(&key(9), 1, 0.0),
            Err(Error::MissingFlow { .. })
        ));
    }

    #[test]
    fn update_stats_sum_matches_accumulator_oracle() {
        let mut cache = FlowCache::new(4, EvictionPolicy::Lru);
        cache.install(key(1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut expected_bytes = 0u64;
        let n = 500;
        for i in 0..n {
            let bytes = rng.gen_range(40..1500);
            expected_bytes += bytes;
            cache.update_stats(&key(1), bytes, i as f64).unwrap();
        }
        let stats = cache.stats(&key(1)).unwrap();
        assert_eq!(stats.packets, n);
        assert_eq!(stats.bytes, expected_bytes);
    }

    #[test]
    fn first_packet_misses_and_installs() {
        let model = StageDelayModel::point_masses(4.0, 3.0, 5.0, 2.0).unwrap();
        let mut dp = Datapath::new(FlowCache::new(4, EvictionPolicy::Lru));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let rec = dp
            .process_packet(&model, &mut rng, 0.0, key(1), 576)
            .unwrap();
        assert!(!rec.cache_hit);
        assert!(rec.upcall_us > 0.0);
        assert!(dp.cache().lookup(&key(1)));
        assert_eq!(rec.total_us, 14.0);
    }

    #[test]
    fn second_packet_of_same_flow_hits() {
        let model = StageDelayModel::point_masses(4.0, 3.0, 5.0, 2.0).unwrap();
        let mut dp = Datapath::new(FlowCache::new(4, EvictionPolicy::Lru));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        dp.process_packet(&model, &mut rng, 0.0, key(1), 576)
            .unwrap();
        let rec = dp
            .process_packet(&model, &mut rng, 100.0, key(1), 576)
            .unwrap();
        assert!(rec.cache_hit);
        assert_eq!(rec.upcall_us, 0.0);
        assert_eq!(rec.total_us, 9.0);
        assert_eq!(dp.cache().stats(&key(1)).unwrap().packets, 2);
    }

    #[test]
    fn queueing_wait_is_charged_separately() {
        // Service takes 14 then 9 us; arrivals every 5 us force waiting.
        let model = StageDelayModel::point_masses(4.0, 3.0, 5.0, 2.0).unwrap();
        let mut dp = Datapath::new(FlowCache::new(4, EvictionPolicy::Lru));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let first = dp
            .process_packet(&model, &mut rng, 0.0, key(1), 56)
            .unwrap();
        assert_eq!(first.wait_us, 0.0);
        assert_eq!(first.departure_us, 14.0);
        let second = dp
            .process_packet(&model, &mut rng, 5.0, key(1), 56)
            .unwrap();
        assert_eq!(second.wait_us, 9.0);
        assert_eq!(second.total_us, 9.0);
        assert_eq!(second.departure_us, 5.0 + 9.0 + 9.0);
        assert!(second.departure_us >= second.arrival_us);
    }

    #[test]
    fn process_packet_surfaces_cache_full() {
        let model = StageDelayModel::point_masses(4.0, 3.0, 5.0, 2.0).unwrap();
        let mut dp = Datapath::new(FlowCache::new(1, EvictionPolicy::Reject));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        dp.process_packet(&model, &mut rng, 0.0, key(1), 56)
            .unwrap();
        let err = dp
            .process_packet(&model, &mut rng, 10.0, key(2), 56)
            .unwrap_err();
        assert!(matches!(err, Error::CacheFull { key } if key == FlowKey::new(0, 1, 2)));
        // The rejected packet leaves no trace in the cache.
        assert_eq!(dp.cache().len(), 1);
        assert_eq!(dp.cache().stats(&key(1)).unwrap().packets, 1);
    }

    #[test]
    fn packet_and_eviction_counts_are_conserved() {
        let model = StageDelayModel::point_masses(1.0, 1.0, 1.0, 1.0).unwrap();
        let mut dp = Datapath::new(FlowCache::new(2, EvictionPolicy::Lru));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut processed = 0u64;
        for i in 0..1000u32 {
            let flow = key(rng.gen_range(0..5));
            dp.process_packet(&model, &mut rng, i as f64 * 10.0, flow, 64)
                .unwrap();
            processed += 1;
        }
        let cache = dp.cache();
        assert_eq!(
            cache.installed_packet_total() + cache.evicted_packet_total(),
            processed
        );
    }
}
