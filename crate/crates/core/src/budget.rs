use crate::error::{LatspecError, Result};

/// Default number of candidate functions an enumeration may inspect.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "LATSPEC_BUDGET";

/// Cap on the number of candidates any single enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// Reads `LATSPEC_BUDGET`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&b| b >= 1)
            .map(Budget)
            .unwrap_or_default()
    }

    pub fn limit(self) -> u64 {
        self.0
    }

    /// Refuses a search whose candidate space `base^exp` exceeds the budget.
    pub fn check_power(self, base: usize, exp: usize, what: &str) -> Result<()> {
        let mut acc: u64 = 1;
        for _ in 0..exp {
            acc = acc.saturating_mul(base as u64);
            if acc > self.0 {
                return Err(self.exceeded(what));
            }
        }
        Ok(())
    }

    pub fn exceeded(self, what: &str) -> LatspecError {
        LatspecError::BudgetExceeded { what: what.to_string(), budget: self.0 }
    }
}

/// Running counter charged against a [`Budget`].
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    used: u64,
    what: &'static str,
}

impl Meter {
    pub(crate) fn new(budget: Budget, what: &'static str) -> Self {
        Meter { budget, used: 0, what }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget.0 {
            Err(self.budget.exceeded(self.what))
        } else {
            Ok(())
        }
    }
}
