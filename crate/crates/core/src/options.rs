use crate::factor::DEFAULT_DEGREE_CAP;

/// How independent units of work (per-prime builds, splittings, batch items)
/// are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled; otherwise
    /// identical to `Sequential`.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    /// Restrict per-prime checks to indices `0..=min(s_pi, k)` when the
    /// denominator is square-free.
    pub square_free_shortcut: bool,
    pub degree_cap: usize,
    pub execution: Execution,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            square_free_shortcut: true,
            degree_cap: DEFAULT_DEGREE_CAP,
            execution: Execution::default(),
        }
    }
}

impl Options {
    pub fn sequential() -> Self {
        Options {
            execution: Execution::Sequential,
            ..Options::default()
        }
    }
}
