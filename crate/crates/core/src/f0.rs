//! Frame-level f0 trajectory classes.
//!
//! Around each frame time `t` three windows of length `w` are examined:
//! left `[t - 1.5w, t - 0.5w)`, center `[t - 0.5w, t + 0.5w)` and right
//! `[t + 0.5w, t + 1.5w)`. The voicing of the left and right windows, and
//! for two voiced windows whether mean log-f0 rises, gives five base
//! classes; the center window's voicing doubles that to ten.

use alloc::vec::Vec;

use crate::error::InputError;

pub const DEFAULT_HOP: f64 = 0.010;
pub const DEFAULT_WINDOW: f64 = 0.040;
pub const DEFAULT_FRAME_RATE: f64 = 12.5;
pub const NUM_CLASSES: u8 = 10;

/// Sample positions within this fraction of a hop of a window edge count as
/// lying exactly on it.
const EDGE_TOLERANCE: f64 = 1e-6;

/// f0 samples at a fixed hop; `None` marks an unvoiced sample.
#[derive(Clone, Debug, PartialEq)]
pub struct F0Track {
    hop: f64,
    samples: Vec<Option<f64>>,
}

impl F0Track {
    pub fn new(hop: f64, samples: Vec<Option<f64>>) -> Result<Self, InputError> {
        if !(hop > 0.0 && hop.is_finite()) {
            return Err(InputError::BadHop(hop));
        }
        let samples = samples
            .into_iter()
            .map(|s| s.filter(|&f| f > 0.0 && f.is_finite()))
            .collect();
        Ok(F0Track { hop, samples })
    }

    /// Raw values where zero or negative means unvoiced.
    pub fn from_hz(hop: f64, values: &[f64]) -> Result<Self, InputError> {
        Self::new(hop, values.iter().map(|&v| Some(v)).collect())
    }

    pub fn hop(&self) -> f64 {
        self.hop
    }

    pub fn samples(&self) -> &[Option<f64>] {
        &self.samples
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 * self.hop
    }

    /// Voiced samples whose timestamp `i * hop` lies in `interval`.
    fn voiced_in(&self, interval: Interval) -> impl Iterator<Item = f64> + '_ {
        let lo = libm::ceil(interval.start / self.hop - EDGE_TOLERANCE);
        let hi = libm::ceil(interval.end / self.hop - EDGE_TOLERANCE);
        let n = self.samples.len() as f64;
        let lo = lo.clamp(0.0, n) as usize;
        let hi = hi.clamp(0.0, n) as usize;
        self.samples[lo..hi.max(lo)].iter().filter_map(|s| *s)
    }
}

/// Half-open time interval `[start, end)` in seconds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Voicing {
    Voiced,
    Unvoiced,
}

/// Trajectory class in `0..10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F0Class(u8);

impl F0Class {
    /// Base classes: 0 (u,u), 1 (u,v), 2 (v,u), 3 (v,v) rising,
    /// 4 (v,v) not rising. The center window adds one when unvoiced.
    pub fn from_parts(base: u8, center: Voicing) -> Self {
        assert!(base < 5, "base class {base} out of range");
        F0Class(2 * base + u8::from(center == Voicing::Unvoiced))
    }

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn base(self) -> u8 {
        self.0 / 2
    }

    pub fn center(self) -> Voicing {
        if self.0 % 2 == 1 {
            Voicing::Unvoiced
        } else {
            Voicing::Voiced
        }
    }
}

/// Left, center and right analysis windows around `t`.
pub fn window_segments(t: f64, w: f64) -> [Interval; 3] {
    [
        Interval {
            start: t - 1.5 * w,
            end: t - 0.5 * w,
        },
        Interval {
            start: t - 0.5 * w,
            end: t + 0.5 * w,
        },
        Interval {
            start: t + 0.5 * w,
            end: t + 1.5 * w,
        },
    ]
}

pub fn voicedness(track: &F0Track, interval: Interval) -> Voicing {
    if track.voiced_in(interval).next().is_some() {
        Voicing::Voiced
    } else {
        Voicing::Unvoiced
    }
}

/// Mean natural-log f0 over the voiced samples in `interval`.
pub fn mean_log_f0(track: &F0Track, interval: Interval) -> Result<f64, InputError> {
    let (sum, n) = track
        .voiced_in(interval)
        .fold((0.0, 0usize), |(s, n), f| (s + libm::log(f), n + 1));
    if n == 0 {
        return Err(InputError::UnvoicedInterval);
    }
    Ok(sum / n as f64)
}

pub fn classify_frame(track: &F0Track, t: f64, w: f64) -> F0Class {
    let [left, center, right] = window_segments(t, w);
    let base = match (voicedness(track, left), voicedness(track, right)) {
        (Voicing::Unvoiced, Voicing::Unvoiced) => 0,
        (Voicing::Unvoiced, Voicing::Voiced) => 1,
        (Voicing::Voiced, Voicing::Unvoiced) => 2,
        (Voicing::Voiced, Voicing::Voiced) => {
            let l = mean_log_f0(track, left).expect("voiced window");
            let r = mean_log_f0(track, right).expect("voiced window");
            if l < r {
                3
            } else {
                4
            }
        }
    };
    F0Class::from_parts(base, voicedness(track, center))
}

/// Classes for frames at `t_n = n / frame_rate`, `n < ceil(duration * rate)`.
pub fn classify_utterance(
    track: &F0Track,
    frame_rate: f64,
    w: f64,
) -> Result<Vec<F0Class>, InputError> {
    if !(frame_rate > 0.0 && frame_rate.is_finite()) {
        return Err(InputError::BadFrameRate(frame_rate));
    }
    if !(w > 0.0 && w.is_finite()) {
        return Err(InputError::BadWindow(w));
    }
    let frames = libm::ceil(track.duration() * frame_rate - EDGE_TOLERANCE).max(0.0) as usize;
    Ok((0..frames)
        .map(|n| classify_frame(track, n as f64 / frame_rate, w))
        .collect())
}
