//! Gradient-norm-informed learning-rate scheduling.
//!
//! The scheduler watches the stream of gradient L2 norms produced by a
//! training loop. It keeps the `W` most recent norms in a FIFO window,
//! averages them into a smoothed local steepness estimate, and tracks the
//! historical peak (the *zenith*) of that average. The learning rate at any
//! iteration is the initial rate scaled by the ratio of the current average
//! to the zenith, so the rate decays automatically as gradients attenuate
//! relative to their peak and never exceeds the initial rate.
//!
//! Until the window first fills, and whenever the zenith is still zero, the
//! scheduler holds the learning rate at its initial value.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Default window size used when a configuration does not specify one.
pub const DEFAULT_WINDOW: usize = 500;

/// Fixed-capacity FIFO of recent gradient L2 norms with an O(1) rolling mean.
///
/// The running sum is rebuilt from the stored values every `capacity` pushes
/// to bound floating-point drift over long runs.
#[derive(Debug, Clone)]
pub struct GradNormWindow {
    capacity: usize,
    values: VecDeque<f64>,
    running_sum: f64,
    pushes_since_rebuild: usize,
}

impl GradNormWindow {
    /// Creates an empty window holding up to `capacity` norms.
    pub fn new(capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::Config("window capacity must be at least 1".into()));
        }
        Ok(Self {
            capacity,
            values: VecDeque::with_capacity(capacity),
            running_sum: 0.0,
            pushes_since_rebuild: 0,
        })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True once the window holds exactly `capacity` norms.
    pub fn is_full(&self) -> bool {
        self.values.len() == self.capacity
    }

    /// Stored norms, oldest first.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied()
    }

    /// Appends a gradient norm, evicting the oldest entry once full.
    ///
    /// Rejects non-finite or negative values: those signal a diverged or
    /// buggy gradient upstream and must not silently poison the window.
    pub fn push(&mut self, g: f64) -> Result<()> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidInput(format!(
                "gradient norm must be finite and non-negative, got {g}"
            )));
        }
        if self.values.len() == self.capacity {
            let oldest = self.values.pop_front().expect("window is full");
            self.running_sum -= oldest;
        }
        self.values.push_back(g);
        self.running_sum += g;

        self.pushes_since_rebuild += 1;
        if self.pushes_since_rebuild >= self.capacity {
            self.running_sum = self.values.iter().sum();
            self.pushes_since_rebuild = 0;
        }
        Ok(())
    }

    /// Mean of the stored norms; only defined once the window is full.
    pub fn rolling_mean(&self) -> Result<f64> {
        if !self.is_full() {
            return Err(Error::WindowNotReady {
                have: self.values.len(),
                need: self.capacity,
            });
        }
        // The incremental subtraction can leave a tiny negative residue when
        // every stored value is zero; clamp so the mean stays non-negative.
        Ok((self.running_sum / self.capacity as f64).max(0.0))
    }
}

/// Complete mutable state of the zenith scheduler.
///
/// One trainer owns and mutates an instance; it is `Send` but not meant to
/// be shared mutably. The state is a handful of scalars plus the window —
/// nothing scales with the number of model parameters.
#[derive(Debug, Clone)]
pub struct ZenithScheduler {
    eta0: f64,
    window: GradNormWindow,
    zenith: f64,
    current_lr: f64,
    iterations_seen: u64,
}

impl ZenithScheduler {
    /// Creates a scheduler with initial learning rate `eta0` and window size
    /// `window_size`.
    pub fn new(eta0: f64, window_size: usize) -> Result<Self> {
        if !eta0.is_finite() || eta0 <= 0.0 {
            return Err(Error::Config(format!(
                "initial learning rate must be finite and positive, got {eta0}"
            )));
        }
        Ok(Self {
            eta0,
            window: GradNormWindow::new(window_size)?,
            zenith: 0.0,
            current_lr: eta0,
            iterations_seen: 0,
        })
    }

    /// Creates a scheduler with the default window size.
    pub fn with_default_window(eta0: f64) -> Result<Self> {
        Self::new(eta0, DEFAULT_WINDOW)
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    /// Historical maximum of the rolling mean observed so far.
    pub fn zenith(&self) -> f64 {
        self.zenith
    }

    /// Learning rate as of the most recent observation.
    pub fn current_lr(&self) -> f64 {
        self.current_lr
    }

    pub fn iterations_seen(&self) -> u64 {
        self.iterations_seen
    }

    pub fn window(&self) -> &GradNormWindow {
        &self.window
    }

    /// Raises the zenith to `mu` if `mu` exceeds it. The zenith never
    /// decreases.
    pub fn update_zenith(&mut self, mu: f64) -> Result<()> {
        if !mu.is_finite() || mu < 0.0 {
            return Err(Error::InvalidInput(format!(
                "rolling mean must be finite and non-negative, got {mu}"
            )));
        }
        self.zenith = self.zenith.max(mu);
        Ok(())
    }

    /// Feeds one gradient norm to the scheduler and returns the learning
    /// rate to apply to the very gradient whose norm was observed.
    ///
    /// While the window is filling, and whenever the zenith is still zero,
    /// the returned rate is exactly `eta0`. Once the window is full the rate
    /// is `eta0 * (mean / zenith)`, which by construction never exceeds
    /// `eta0`.
    pub fn observe_gradient_norm(&mut self, g: f64) -> Result<f64> {
        self.window.push(g)?;
        if self.window.is_full() {
            let mu = self.window.rolling_mean()?;
            self.update_zenith(mu)?;
            self.current_lr = if self.zenith > 0.0 {
                self.eta0 * (mu / self.zenith)
            } else {
                self.eta0
            };
        }
        self.iterations_seen += 1;
        Ok(self.current_lr)
    }
}
