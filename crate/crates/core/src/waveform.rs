//! Uniformly sampled, synchronized multi-channel time series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of channels sharing one uniform time base `t_i = t0 + i / fs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveformRecord {
    fs: f64,
    t0: f64,
    names: Vec<String>,
    data: Vec<Vec<f64>>,
}

impl WaveformRecord {
    pub fn new(fs: f64, t0: f64) -> Result<Self> {
        if !(fs.is_finite() && fs > 0.0) {
            return Err(Error::invalid(format!("sample rate must be positive, got {fs}")));
        }
        if !t0.is_finite() {
            return Err(Error::invalid("start time must be finite"));
        }
        Ok(Self { fs, t0, names: Vec::new(), data: Vec::new() })
    }

    /// Append a channel. All channels must have the same length and unique names.
    pub fn push_channel(&mut self, name: impl Into<String>, samples: Vec<f64>) -> Result<()> {
        let name = name.into();
        if name.is_empty() || name == "t" {
            return Err(Error::invalid(format!("invalid channel name {name:?}")));
        }
        if self.names.contains(&name) {
            return Err(Error::invalid(format!("duplicate channel {name:?}")));
        }
        if let Some(first) = self.data.first() {
            if first.len() != samples.len() {
                return Err(Error::invalid(format!(
                    "channel {name:?} has {} samples, expected {}",
                    samples.len(),
                    first.len()
                )));
            }
        }
        self.names.push(name);
        self.data.push(samples);
        Ok(())
    }

    pub fn with_channel(mut self, name: impl Into<String>, samples: Vec<f64>) -> Result<Self> {
        self.push_channel(name, samples)?;
        Ok(self)
    }

    pub fn fs(&self) -> f64 {
        self.fs
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.fs
    }

    /// Number of samples per channel.
    pub fn len(&self) -> usize {
        self.data.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn time(&self, index: usize) -> f64 {
        self.t0 + index as f64 / self.fs
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.time(i)).collect()
    }

    /// Span covered by the samples, `len / fs`.
    pub fn duration(&self) -> f64 {
        self.len() as f64 / self.fs
    }

    pub fn channel_names(&self) -> &[String] {
        &self.names
    }

    pub fn has_channel(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    pub fn channel(&self, name: &str) -> Result<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.data[i].as_slice())
            .ok_or_else(|| Error::invalid(format!("missing channel {name:?}")))
    }

    /// Iterate `(name, samples)` in channel order.
    pub fn channels(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.names.iter().map(String::as_str).zip(self.data.iter().map(Vec::as_slice))
    }

    /// Apply `f(channel_name, samples)` to every channel in place.
    pub fn map_channels(&mut self, mut f: impl FnMut(&str, &mut [f64])) {
        for (name, samples) in self.names.iter().zip(self.data.iter_mut()) {
            f(name, samples);
        }
    }

    /// Keep only the samples with index `>= start`, shifting `t0` accordingly.
    pub fn tail_from(&self, start: usize) -> Self {
        let start = start.min(self.len());
        Self {
            fs: self.fs,
            t0: self.time(start),
            names: self.names.clone(),
            data: self.data.iter().map(|c| c[start..].to_vec()).collect(),
        }
    }

    /// New record holding a subset of channels (in the requested order).
    pub fn select(&self, names: &[&str]) -> Result<Self> {
        let mut out = Self::new(self.fs, self.t0)?;
        for name in names {
            out.push_channel(*name, self.channel(name)?.to_vec())?;
        }
        Ok(out)
    }
}

/// Samples per fundamental cycle, required to be a positive integer.
pub fn samples_per_cycle(fs: f64, f0: f64) -> Result<usize> {
    if !(f0.is_finite() && f0 > 0.0) {
        return Err(Error::config(format!("fundamental frequency must be positive, got {f0}")));
    }
    if !(fs.is_finite() && fs > 0.0) {
        return Err(Error::config(format!("sample rate must be positive, got {fs}")));
    }
    let ratio = fs / f0;
    let n = ratio.round();
    if n < 1.0 || (ratio - n).abs() > 1e-9 * ratio.max(1.0) {
        return Err(Error::config(format!(
            "fs/f0 = {ratio} must be a positive integer so analysis windows align with cycles"
        )));
    }
    Ok(n as usize)
}
