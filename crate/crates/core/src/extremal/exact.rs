use std::time::Instant;

use super::{
    finish, ConfigHypergraph, ExtremalError, Instance, SearchBudget, SearchMode, SearchResult,
};

struct Dfs<'a> {
    hyper: &'a ConfigHypergraph,
    chosen: Vec<bool>,
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    exhausted: bool,
}

impl Dfs<'_> {
    /// Whether `item` closes a configuration whose other items are chosen.
    fn blocked(&self, item: usize) -> bool {
        self.hyper.closing[item].iter().any(|&c| {
            self.hyper.configs[c]
                .iter()
                .all(|&j| j == item || self.chosen[j])
        })
    }

    fn over_budget(&mut self) -> bool {
        if self.nodes >= self.budget.node_cap
            || (self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.budget.time_cap)
        {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn go(&mut self, item: usize) {
        self.nodes += 1;
        if self.over_budget() {
            // the partial set is configuration-free
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if item == self.hyper.items {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if self.current.len() + (self.hyper.items - item) <= self.best.len() {
            return;
        }
        if !self.blocked(item) {
            self.chosen[item] = true;
            self.current.push(item);
            self.go(item + 1);
            self.current.pop();
            self.chosen[item] = false;
            if self.exhausted {
                return;
            }
        }
        self.go(item + 1);
    }
}

/// Largest configuration-free subset of the ground set, proved optimal by
/// exhausting a depth-first search that tries each point in, then out, in
/// index order. The set returned is the lexicographically least maximum.
///
/// When the budget runs out the error carries the best set found so far,
/// marked non-optimal.
pub fn max_free_exact(
    inst: &Instance<'_>,
    budget: &SearchBudget,
) -> Result<SearchResult, ExtremalError> {
    budget.check()?;
    let hyper = ConfigHypergraph::build(inst)?;
    let mut dfs = Dfs {
        chosen: vec![false; hyper.items],
        current: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget: *budget,
        start: Instant::now(),
        exhausted: false,
        hyper: &hyper,
    };
    dfs.go(0);
    let result = finish(
        inst,
        SearchMode::Exact,
        &dfs.best,
        !dfs.exhausted,
        dfs.nodes,
    )?;
    if dfs.exhausted {
        Err(ExtremalError::BudgetExceeded {
            best: Box::new(result),
        })
    } else {
        Ok(result)
    }
}
