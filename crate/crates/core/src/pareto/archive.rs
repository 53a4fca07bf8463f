use super::dominance::{compare, Dominance};
use super::{Grid, Solution};
use crate::error::{Error, Result};
use rand::seq::IndexedRandom;
use rand::Rng;

/// Result of offering a candidate to the archive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    /// Candidate stored; `displaced` members it dominated were removed.
    Accepted { displaced: usize },
    /// Candidate is dominated by, or equal to, an existing member.
    Rejected,
}

/// The external population: mutually non-dominated solutions with a soft
/// capacity that [`Archive::truncate`] enforces.
#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    members: Vec<Solution>,
    capacity: usize,
}

impl Archive {
    pub fn new(capacity: usize) -> Self {
        Self {
            members: Vec::new(),
            capacity,
        }
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Solution> {
        self.members
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Offers `candidate`. Dominated or duplicate candidates are rejected, as
    /// are candidates with non-finite objectives. Capacity is not enforced.
    pub fn insert(&mut self, candidate: Solution) -> InsertOutcome {
        if !candidate.objectives.is_finite() {
            return InsertOutcome::Rejected;
        }
        let cand = candidate.objectives.values();
        let mut dominated = Vec::new();
        for (i, m) in self.members.iter().enumerate() {
            match compare(m.objectives.values(), cand) {
                Dominance::FirstDominates | Dominance::Equal => return InsertOutcome::Rejected,
                Dominance::SecondDominates => dominated.push(i),
                Dominance::Incomparable => {}
            }
        }
        let displaced = dominated.len();
        if displaced > 0 {
            let mut i = 0;
            self.members.retain(|_| {
                let keep = dominated.binary_search(&i).is_err();
                i += 1;
                keep
            });
        }
        self.members.push(candidate);
        InsertOutcome::Accepted { displaced }
    }

    pub fn grid(&self, n_grid: usize) -> Result<Grid> {
        Grid::build(&self.members, n_grid)
    }

    /// Removes one random member of a most crowded box (ties between boxes
    /// broken uniformly). Returns `None` on an empty archive.
    pub fn evict_one<R: Rng + ?Sized>(&mut self, n_grid: usize, rng: &mut R) -> Option<Solution> {
        let grid = self.grid(n_grid).ok()?;
        let boxes = grid.members_by_box(&self.members);
        let max = boxes.values().map(Vec::len).max()?;
        let crowded: Vec<&Vec<usize>> = boxes.values().filter(|b| b.len() == max).collect();
        let chosen = crowded.choose(rng)?;
        let victim = *chosen.choose(rng)?;
        Some(self.members.remove(victim))
    }

    /// Evicts from the most crowded box, one member at a time with the grid
    /// rebuilt in between, until the archive fits its capacity.
    pub fn truncate<R: Rng + ?Sized>(&mut self, n_grid: usize, rng: &mut R) {
        while self.members.len() > self.capacity {
            if self.evict_one(n_grid, rng).is_none() {
                break;
            }
        }
    }

    /// See [`select_leader`].
    pub fn select_leader<R: Rng + ?Sized>(&self, grid: &Grid, rng: &mut R) -> Result<Solution> {
        select_leader(self, grid, rng)
    }
}

/// Copies a uniformly random member of a least crowded non-empty box of
/// `grid`. Ties between equally sparse boxes are broken uniformly.
pub fn select_leader<R: Rng + ?Sized>(archive: &Archive, grid: &Grid, rng: &mut R) -> Result<Solution> {
    let boxes = grid.members_by_box(archive.members());
    let min = boxes.values().map(Vec::len).min().ok_or(Error::EmptyArchive)?;
    let sparse: Vec<&Vec<usize>> = boxes.values().filter(|b| b.len() == min).collect();
    let chosen = sparse.choose(rng).ok_or(Error::EmptyArchive)?;
    let idx = *chosen.choose(rng).ok_or(Error::EmptyArchive)?;
    Ok(archive.members[idx].clone())
}
