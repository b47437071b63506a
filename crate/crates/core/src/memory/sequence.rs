use crate::error::{param, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// One input slot: a token index or nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    Token(usize),
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct InputSequence {
    pub slots: Vec<Slot>,
}

impl InputSequence {
    pub fn from_tokens(tokens: &[usize]) -> Self {
        InputSequence { slots: tokens.iter().map(|&t| Slot::Token(t)).collect() }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Uniform tokens, each slot left empty with probability `empty_prob`.
    pub fn generate<R: Rng>(length: usize, n_tokens: usize, empty_prob: f64, rng: &mut R) -> Result<Self> {
        if n_tokens == 0 {
            return Err(param("n_tokens must be positive"));
        }
        if !(0.0..=1.0).contains(&empty_prob) {
            return Err(param(format!("empty probability {empty_prob} outside [0, 1]")));
        }
        let slots = (0..length)
            .map(|_| {
                if empty_prob > 0.0 && rng.random::<f64>() < empty_prob {
                    Slot::Empty
                } else {
                    Slot::Token(rng.random_range(0..n_tokens))
                }
            })
            .collect();
        Ok(InputSequence { slots })
    }

    /// One token id per line, `-` for an empty slot. Blank lines are skipped.
    pub fn parse(text: &str, n_tokens: usize) -> Result<Self> {
        let mut slots = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line == "-" {
                slots.push(Slot::Empty);
                continue;
            }
            let d: usize = line
                .parse()
                .map_err(|_| param(format!("line {}: expected a token id or '-', got {line:?}", i + 1)))?;
            if d >= n_tokens {
                return Err(param(format!("line {}: token {d} outside [0, {n_tokens})", i + 1)));
            }
            slots.push(Slot::Token(d));
        }
        Ok(InputSequence { slots })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.slots {
            match s {
                Slot::Token(d) => out.push_str(&d.to_string()),
                Slot::Empty => out.push('-'),
            }
            out.push('\n');
        }
        out
    }
}
