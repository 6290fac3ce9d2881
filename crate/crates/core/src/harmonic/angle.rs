use std::f64::consts::TAU;

/// An angle canonicalized to `[0, 2π)`.
///
/// Every public evaluation routine takes an `Angle`, so 2π-periodicity is
/// structural: two raw values that differ by a full turn reduce to the same
/// representative before any trigonometry happens.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    /// Reduce `radians` into `[0, 2π)`.
    ///
    /// Panics on non-finite input; angles coming from user input are
    /// validated at the parsing boundary before they reach this type.
    pub fn new(radians: f64) -> Self {
        assert!(radians.is_finite(), "angle must be finite, got {radians}");
        let mut r = radians % TAU;
        if r < 0.0 {
            r += TAU;
        }
        // `r += TAU` can round back up to exactly TAU for tiny negatives.
        if r >= TAU {
            r = 0.0;
        }
        Angle(r)
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
