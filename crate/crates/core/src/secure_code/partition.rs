use crate::error::{Error, Result};
use crate::indexset::IndexSet;

/// Per-block split of `[0, N)`: information `I`, frozen `F`, random `R`,
/// chained `B`, and the relay set `E ⊆ I` that carries the next block's `B`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexPartition {
    pub info: IndexSet,
    pub frozen: IndexSet,
    pub random: IndexSet,
    pub chained: IndexSet,
    pub relay: IndexSet,
}

impl IndexPartition {
    /// `I \ E`, the positions that carry message bits.
    pub fn message_set(&self) -> IndexSet {
        self.info.difference(&self.relay)
    }

    pub fn message_len(&self) -> usize {
        self.info.len() - self.relay.len()
    }

    /// Disjoint cover of `[0, n)` and `E ⊆ I`.
    pub fn check(&self, n: usize) -> Result<()> {
        let sets = [&self.info, &self.frozen, &self.random, &self.chained];
        let total: usize = sets.iter().map(|s| s.len()).sum();
        let cover = sets.iter().fold(IndexSet::new(), |acc, s| acc.union(s));
        if total != n || cover != IndexSet::full(n) {
            return Err(Error::config(format!(
                "partition is not a disjoint cover of {n} indices"
            )));
        }
        if !self.relay.is_subset(&self.info) {
            return Err(Error::config(
                "relay set is not contained in the information set",
            ));
        }
        Ok(())
    }
}

fn check_within(set: &IndexSet, n: usize, what: &str) -> Result<()> {
    match set.max() {
        Some(m) if m >= n => Err(Error::OutOfRange(format!(
            "{what} contains index {m} outside [0, {n})"
        ))),
        _ => Ok(()),
    }
}

/// `I = L ∩ H`, `F = L^c ∩ H`, `R = L ∩ H^c`, `B = L^c ∩ H^c` for the
/// main-channel low set `L` and wiretap high set `H`. `E` is left empty.
pub fn partition(low_main: &IndexSet, high_wiretap: &IndexSet, n: usize) -> Result<IndexPartition> {
    check_within(low_main, n, "low-entropy main set")?;
    check_within(high_wiretap, n, "high-entropy wiretap set")?;
    let low_c = low_main.complement(n);
    let high_c = high_wiretap.complement(n);
    Ok(IndexPartition {
        info: low_main.intersection(high_wiretap),
        frozen: low_c.intersection(high_wiretap),
        random: low_main.intersection(&high_c),
        chained: low_c.intersection(&high_c),
        relay: IndexSet::new(),
    })
}

/// `E^t` = the `|B^{t+1}|` indices of `I^t` with smallest main-channel `z`
/// (ties by index); the last block gets `E^T = ∅`.
pub fn chain_plan(partitions: &[IndexPartition], main_z: &[Vec<f64>]) -> Result<Vec<IndexSet>> {
    if partitions.len() != main_z.len() {
        return Err(Error::LengthMismatch {
            what: "per-block z vectors",
            expected: partitions.len(),
            got: main_z.len(),
        });
    }
    let mut plan = Vec::with_capacity(partitions.len());
    for t in 0..partitions.len() {
        let Some(next) = partitions.get(t + 1) else {
            plan.push(IndexSet::new());
            break;
        };
        let needed = next.chained.len();
        let info = &partitions[t].info;
        if needed > info.len() {
            return Err(Error::InfeasibleChain {
                block: t + 1,
                needed,
                available: info.len(),
            });
        }
        let z = &main_z[t];
        let mut order: Vec<usize> = info.iter().collect();
        if let Some(&bad) = order.iter().find(|&&i| i >= z.len()) {
            return Err(Error::OutOfRange(format!("index {bad} has no z value")));
        }
        order.sort_by(|a, b| z[*a].total_cmp(&z[*b]).then(a.cmp(b)));
        plan.push(order[..needed].iter().copied().collect());
    }
    Ok(plan)
}
