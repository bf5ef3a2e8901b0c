//! Deliberate defects used to show that the law suites can fail.
//!
//! A mutation is active only on the thread that enabled it, so concurrent
//! tests never see each other's defects. Suites run under a mutation must be
//! run on that thread (no `--jobs`).

use std::cell::Cell;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// `make_admissible` accepts non-monotone generator tables.
    SkipMonotonicity,
    /// `glue` forgets the `f(D ∩ X) ⊆ D` part of the closed-set condition.
    DropGlueF,
    /// every stage component is flagged as escaping.
    ForceEscapes,
}

thread_local! {
    static ACTIVE: Cell<Option<Mutation>> = const { Cell::new(None) };
}

pub fn is_active(m: Mutation) -> bool {
    ACTIVE.with(|a| a.get() == Some(m))
}

/// Restores the previous mutation state on drop.
pub struct Guard(Option<Mutation>);

pub fn enable(m: Mutation) -> Guard {
    Guard(ACTIVE.with(|a| a.replace(Some(m))))
}

impl Drop for Guard {
    fn drop(&mut self) {
        ACTIVE.with(|a| a.set(self.0));
    }
}
