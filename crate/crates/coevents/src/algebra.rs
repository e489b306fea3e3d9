//! Finite Boolean event algebra: a labeled history space, events as
//! bit-vector subsets, partitions, and partition-generated subalgebras.
//!
//! Everything here is immutable after construction and safe to share
//! across threads. Events from different spaces never combine; such
//! attempts are hard errors rather than coercions, because silent index
//! misalignment is the dominant bug class in subset-enumeration code.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Default ceiling on the number of histories. Enumerations over the
/// event algebra are exponential in this number by nature; the cap keeps
/// worst cases explicit.
pub const DEFAULT_CAP: usize = 20;

/// Absolute ceiling accepted by [`HistorySpace::with_cap`]. Masks are
/// 32-bit and full sweeps index `2^N` subsets.
pub const MAX_CAP: usize = 24;

type Mask = u32;

#[derive(Debug)]
struct SpaceInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    cap: usize,
}

/// An ordered finite set of history labels.
///
/// The index order is the input order and is stable for the lifetime of
/// the space; history `i` corresponds to bit `i` of every event mask.
#[derive(Clone, Debug)]
pub struct HistorySpace {
    inner: Arc<SpaceInner>,
}

impl PartialEq for HistorySpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.labels == other.inner.labels
    }
}

impl Eq for HistorySpace {}

impl HistorySpace {
    /// Builds a space with the default cap of [`DEFAULT_CAP`] histories.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(labels, DEFAULT_CAP)
    }

    /// Builds a space with an explicit cap (at most [`MAX_CAP`]).
    pub fn with_cap<I, S>(labels: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let cap = cap.min(MAX_CAP);
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        if labels.len() > cap {
            return Err(Error::OverCap {
                size: labels.len(),
                cap,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(HistorySpace {
            inner: Arc::new(SpaceInner { labels, index, cap }),
        })
    }

    pub fn size(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn cap(&self) -> usize {
        self.inner.cap
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.inner.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.index.get(label).copied()
    }

    /// Number of events in the algebra, `2^N`.
    pub fn event_count(&self) -> usize {
        1usize << self.size()
    }

    fn full_mask(&self) -> Mask {
        if self.size() == 32 {
            u32::MAX
        } else {
            (1u32 << self.size()) - 1
        }
    }

    pub fn empty_event(&self) -> Event {
        Event {
            space: self.clone(),
            mask: 0,
        }
    }

    pub fn full_event(&self) -> Event {
        Event {
            space: self.clone(),
            mask: self.full_mask(),
        }
    }

    pub fn singleton(&self, i: usize) -> Result<Event> {
        if i >= self.size() {
            return Err(Error::InvalidEventBits {
                mask: 1 << i,
                size: self.size(),
            });
        }
        Ok(Event {
            space: self.clone(),
            mask: 1 << i,
        })
    }

    /// Builds an event from a raw bit mask (bit `i` set means history `i`
    /// is a member). Bits at positions `>= N` are rejected.
    pub fn event_from_mask(&self, mask: Mask) -> Result<Event> {
        if mask & !self.full_mask() != 0 {
            return Err(Error::InvalidEventBits {
                mask,
                size: self.size(),
            });
        }
        Ok(Event {
            space: self.clone(),
            mask,
        })
    }

    pub fn event_from_labels<'a, I>(&self, labels: I) -> Result<Event>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut mask = 0;
        for label in labels {
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            mask |= 1 << i;
        }
        Ok(Event {
            space: self.clone(),
            mask,
        })
    }

    /// All `2^N` events in canonical order (ascending bit pattern,
    /// history 0 in the least significant bit).
    pub fn all_events(&self) -> impl Iterator<Item = Event> + '_ {
        (0..self.event_count() as u32).map(move |mask| Event {
            space: self.clone(),
            mask,
        })
    }
}

impl fmt::Display for HistorySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.inner.labels.join(", "))
    }
}

/// A subset of the history space; simultaneously a yes/no question.
#[derive(Clone, Debug)]
pub struct Event {
    space: HistorySpace,
    mask: Mask,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && self.space == other.space
    }
}

impl Eq for Event {}

fn check_same_space(a: &Event, b: &Event) -> Result<()> {
    if a.space == b.space {
        Ok(())
    } else {
        Err(Error::MixedSpaces)
    }
}

impl Event {
    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Number of member histories.
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains_history(&self, i: usize) -> bool {
        i < self.space.size() && self.mask & (1 << i) != 0
    }

    /// Member indices in ascending order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.space.size())
            .filter(|i| self.mask & (1 << i) != 0)
            .collect()
    }

    pub fn member_labels(&self) -> Vec<String> {
        self.members()
            .into_iter()
            .map(|i| self.space.label(i).to_string())
            .collect()
    }

    pub fn union(&self, other: &Event) -> Result<Event> {
        check_same_space(self, other)?;
        Ok(Event {
            space: self.space.clone(),
            mask: self.mask | other.mask,
        })
    }

    pub fn intersect(&self, other: &Event) -> Result<Event> {
        check_same_space(self, other)?;
        Ok(Event {
            space: self.space.clone(),
            mask: self.mask & other.mask,
        })
    }

    pub fn complement(&self) -> Event {
        Event {
            space: self.space.clone(),
            mask: !self.mask & self.space.full_mask(),
        }
    }

    pub fn symmetric_difference(&self, other: &Event) -> Result<Event> {
        check_same_space(self, other)?;
        Ok(Event {
            space: self.space.clone(),
            mask: self.mask ^ other.mask,
        })
    }

    /// The material conditional `not self, or other`.
    pub fn implies_event(&self, other: &Event) -> Result<Event> {
        self.complement().union(other)
    }

    pub fn is_subset(&self, other: &Event) -> Result<bool> {
        check_same_space(self, other)?;
        Ok(self.mask & !other.mask == 0)
    }

    pub fn is_disjoint(&self, other: &Event) -> Result<bool> {
        check_same_space(self, other)?;
        Ok(self.mask & other.mask == 0)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", self.member_labels().join("+"))
    }
}

/// A list of pairwise-disjoint nonempty events tiling the whole space,
/// held in canonical order (ascending smallest member index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    space: HistorySpace,
    blocks: Vec<Event>,
}

impl Partition {
    pub fn new(space: &HistorySpace, blocks: Vec<Event>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let mut seen: Mask = 0;
        for block in &blocks {
            if block.space() != space {
                return Err(Error::MixedSpaces);
            }
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if seen & block.mask() != 0 {
                return Err(Error::InvalidPartition("blocks overlap".into()));
            }
            seen |= block.mask();
        }
        if seen != space.full_mask() {
            return Err(Error::InvalidPartition(
                "blocks do not cover the space".into(),
            ));
        }
        let mut blocks = blocks;
        blocks.sort_by_key(|b| b.mask().trailing_zeros());
        Ok(Partition {
            space: space.clone(),
            blocks,
        })
    }

    pub fn from_label_blocks(space: &HistorySpace, blocks: &[Vec<String>]) -> Result<Self> {
        let events = blocks
            .iter()
            .map(|labels| space.event_from_labels(labels.iter().map(String::as_str)))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(space, events)
    }

    /// The partition with a single block, the whole space.
    pub fn trivial(space: &HistorySpace) -> Self {
        Partition {
            space: space.clone(),
            blocks: vec![space.full_event()],
        }
    }

    /// The partition into singletons.
    pub fn discrete(space: &HistorySpace) -> Self {
        Partition {
            space: space.clone(),
            blocks: (0..space.size())
                .map(|i| space.singleton(i).expect("index in range"))
                .collect(),
        }
    }

    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    pub fn blocks(&self) -> &[Event] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The block containing history `i`.
    pub fn block_of(&self, i: usize) -> Option<&Event> {
        self.blocks.iter().find(|b| b.contains_history(i))
    }
}

/// The subalgebra generated by a partition: all unions of blocks.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    partition: Partition,
}

impl Subalgebra {
    pub fn new(partition: Partition) -> Self {
        Subalgebra { partition }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// All `2^k` block unions, ordered by block-inclusion bit pattern
    /// (block 0 in the least significant bit).
    pub fn events(&self) -> Vec<Event> {
        let space = self.partition.space();
        self.event_masks()
            .into_iter()
            .map(|mask| space.event_from_mask(mask).expect("block masks in range"))
            .collect()
    }

    pub(crate) fn event_masks(&self) -> Vec<Mask> {
        let k = self.partition.block_count();
        let mut out = Vec::with_capacity(1 << k);
        for pattern in 0..(1u32 << k) {
            let mut mask = 0;
            for (b, block) in self.partition.blocks().iter().enumerate() {
                if pattern & (1 << b) != 0 {
                    mask |= block.mask();
                }
            }
            out.push(mask);
        }
        out
    }
}
