//! Versioned little-endian binary container for codebooks, binding
//! operators and memory states.
//!
//! Layout: magic `SPOS`, format version (u16), artifact tag (u8), then the
//! artifact's fields. Vectors are a u64 length followed by the elements.

use crate::codebook::{BindingKind, BindingOperator, Codebook, Scheme};
use crate::error::{Error, Result};
use crate::memory::MemoryState;

const MAGIC: &[u8; 4] = b"SPOS";
pub const FORMAT_VERSION: u16 = 1;

const TAG_CODEBOOK: u8 = 1;
const TAG_BINDING: u8 = 2;
const TAG_STATE: u8 = 3;

/// Anything that round-trips through the container.
pub trait Artifact: Sized {
    fn to_bytes(&self) -> Vec<u8>;
    fn from_bytes(bytes: &[u8]) -> Result<Self>;
}

struct Writer(Vec<u8>);

impl Writer {
    fn new(tag: u8) -> Self {
        let mut buf = MAGIC.to_vec();
        buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        buf.push(tag);
        Writer(buf)
    }
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn f64s(&mut self, v: &[f64]) {
        self.u64(v.len() as u64);
        v.iter().for_each(|&x| self.f64(x));
    }
    fn u64s(&mut self, v: &[usize]) {
        self.u64(v.len() as u64);
        v.iter().for_each(|&x| self.u64(x as u64));
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

fn bad(msg: &str) -> Error {
    Error::Container(msg.to_string())
}

impl<'a> Reader<'a> {
    fn open(buf: &'a [u8], tag: u8) -> Result<Self> {
        if buf.len() < 7 || &buf[..4] != MAGIC {
            return Err(bad("missing magic"));
        }
        let version = u16::from_le_bytes([buf[4], buf[5]]);
        if version != FORMAT_VERSION {
            return Err(bad(&format!("unsupported format version {version}")));
        }
        if buf[6] != tag {
            return Err(bad(&format!("artifact tag {} where {tag} was expected", buf[6])));
        }
        Ok(Reader { buf, pos: 7 })
    }
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).ok_or_else(|| bad("length overflow"))?;
        if end > self.buf.len() {
            return Err(bad("truncated"));
        }
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }
    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
    fn len(&mut self) -> Result<usize> {
        let n = self.u64()? as usize;
        if n > (self.buf.len() - self.pos) / 8 {
            return Err(bad("vector longer than the remaining bytes"));
        }
        Ok(n)
    }
    fn f64s(&mut self) -> Result<Vec<f64>> {
        let n = self.len()?;
        (0..n).map(|_| self.f64()).collect()
    }
    fn u64s(&mut self) -> Result<Vec<usize>> {
        let n = self.len()?;
        (0..n).map(|_| self.u64().map(|v| v as usize)).collect()
    }
    fn finish(self) -> Result<()> {
        if self.pos != self.buf.len() {
            return Err(bad("trailing bytes"));
        }
        Ok(())
    }
}

fn scheme_tag(s: Scheme) -> u8 {
    match s {
        Scheme::Hdc => 0,
        Scheme::Hrr => 1,
        Scheme::Fhrr => 2,
        Scheme::RandomUnitary => 3,
    }
}

fn kind_tag(k: BindingKind) -> u8 {
    match k {
        BindingKind::Permutation => 0,
        BindingKind::Circulant => 1,
        BindingKind::PhasorDiagonal => 2,
        BindingKind::RandomUnitary => 3,
    }
}

impl Artifact for Codebook {
    fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(TAG_CODEBOOK);
        w.u8(scheme_tag(self.scheme));
        w.u64(self.n_dim as u64);
        w.u64(self.n_tokens as u64);
        w.f64(self.sparsity);
        w.u64(self.seed);
        w.f64s(self.entries());
        w.0
    }

    fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::open(bytes, TAG_CODEBOOK)?;
        let scheme = match r.u8()? {
            0 => Scheme::Hdc,
            1 => Scheme::Hrr,
            2 => Scheme::Fhrr,
            3 => Scheme::RandomUnitary,
            t => return Err(bad(&format!("unknown scheme tag {t}"))),
        };
        let n_dim = r.u64()? as usize;
        let n_tokens = r.u64()? as usize;
        let sparsity = r.f64()?;
        let seed = r.u64()?;
        let entries = r.f64s()?;
        r.finish()?;
        Codebook::from_entries(scheme, n_dim, n_tokens, sparsity, seed, entries)
    }
}

impl Artifact for BindingOperator {
    fn to_bytes(&self) -> Vec<u8> {
        use crate::codebook::binding_wire::Payload;
        let wire = self.wire();
        let mut w = Writer::new(TAG_BINDING);
        w.u8(kind_tag(wire.kind));
        w.u64(wire.n_dim as u64);
        w.f64(wire.contraction);
        w.u64(wire.seed);
        match &wire.payload {
            Payload::Permutation { cycle } => w.u64s(cycle),
            Payload::Circulant { key, paired } => {
                w.u8(*paired as u8);
                w.f64s(key);
            }
            Payload::Phasor { phases } => w.f64s(phases),
            Payload::Unitary { entries } => w.f64s(entries),
        }
        w.0
    }

    fn from_bytes(bytes: &[u8]) -> Result<Self> {
        use crate::codebook::binding_wire::{Payload, Wire};
        let mut r = Reader::open(bytes, TAG_BINDING)?;
        let kind = match r.u8()? {
            0 => BindingKind::Permutation,
            1 => BindingKind::Circulant,
            2 => BindingKind::PhasorDiagonal,
            3 => BindingKind::RandomUnitary,
            t => return Err(bad(&format!("unknown binding tag {t}"))),
        };
        let n_dim = r.u64()? as usize;
        let contraction = r.f64()?;
        let seed = r.u64()?;
        let payload = match kind {
            BindingKind::Permutation => Payload::Permutation { cycle: r.u64s()? },
            BindingKind::Circulant => {
                let paired = r.u8()? != 0;
                Payload::Circulant { key: r.f64s()?, paired }
            }
            BindingKind::PhasorDiagonal => Payload::Phasor { phases: r.f64s()? },
            BindingKind::RandomUnitary => Payload::Unitary { entries: r.f64s()? },
        };
        r.finish()?;
        BindingOperator::from_wire(Wire { kind, n_dim, contraction, seed, payload })
    }
}

impl Artifact for MemoryState {
    fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(TAG_STATE);
        w.u64(self.steps_elapsed as u64);
        w.u64(self.items_stored as u64);
        w.f64s(&self.x);
        w.0
    }

    fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::open(bytes, TAG_STATE)?;
        let steps_elapsed = r.u64()? as usize;
        let items_stored = r.u64()? as usize;
        let x = r.f64s()?;
        r.finish()?;
        if items_stored > steps_elapsed {
            return Err(bad("more items stored than steps elapsed"));
        }
        Ok(MemoryState { x, steps_elapsed, items_stored })
    }
}

pub fn save<A: Artifact>(artifact: &A, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, artifact.to_bytes())?;
    Ok(())
}

pub fn load<A: Artifact>(path: &std::path::Path) -> Result<A> {
    A::from_bytes(&std::fs::read(path)?)
}
