//! Content-addressed certificate cache: one JSON file per (prime, model).
//!
//! Files are written to a temporary name in the cache directory and renamed
//! into place, so concurrent runs sharing a directory never see partial files.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use artin1_core::certify::Certificate;
use artin1_core::pencil::Pencil;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

/// Hex digest of the artifact version, the prime, the provenance, and the
/// model coefficients.
pub fn model_key(pencil: &Pencil) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(b"\0");
    h.update(pencil.field().p().to_le_bytes());
    h.update(format!("{:?}", pencil.provenance()).as_bytes());
    for poly in [pencil.a4(), pencil.a6()] {
        h.update(b"\0");
        for c in poly.coeffs() {
            h.update(c.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    fn path(&self, pencil: &Pencil) -> PathBuf {
        self.dir.join(format!(
            "p{}-{}.json",
            pencil.field().p(),
            model_key(pencil)
        ))
    }

    /// A stored certificate for `pencil`, if present and readable.
    pub fn get(&self, pencil: &Pencil) -> Option<Certificate> {
        let bytes = fs::read(self.path(pencil)).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    pub fn put(&self, pencil: &Pencil, cert: &Certificate) -> io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(&mut tmp, cert)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(pencil)).map_err(|e| e.error)?;
        Ok(())
    }
}
