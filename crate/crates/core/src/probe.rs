//! Operation counters for checking complexity claims structurally.
//!
//! Hot loops take a `Probe` by generic parameter; the `()` probe compiles
//! away, while [`Counter`] tallies how many units of work were done.

pub trait Probe {
    fn record(&mut self, units: usize);
}

impl Probe for () {
    #[inline(always)]
    fn record(&mut self, _units: usize) {}
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counter {
    pub count: u64,
}

impl Probe for Counter {
    #[inline]
    fn record(&mut self, units: usize) {
        self.count += units as u64;
    }
}
