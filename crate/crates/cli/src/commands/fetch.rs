use std::io::Write;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::output::summary;
use crate::CmdError;

/// Download a zero table over HTTP(S), verify its SHA-256, and move it into
/// place atomically. On any failure no partial file is left behind.
pub fn run(
    cfg: &RunConfig,
    url: Option<String>,
    sha256: Option<String>,
    out: PathBuf,
) -> Result<(), CmdError> {
    let url = url
        .or_else(|| cfg.zero_url.clone())
        .ok_or_else(|| CmdError::Data("no URL given (--url or zero_url in config)".into()))?;
    let expected = sha256
        .or_else(|| cfg.zero_sha256.clone())
        .ok_or_else(|| CmdError::Data("no checksum given (--sha256 or zero_sha256)".into()))?;
    let expected = expected.to_ascii_lowercase();

    let response = reqwest::blocking::get(&url)
        .map_err(|e| CmdError::Data(format!("network error fetching {url}: {e}")))?;
    if !response.status().is_success() {
        return Err(CmdError::Data(format!(
            "fetch failed: {url} returned {}",
            response.status()
        )));
    }
    let body = response
        .bytes()
        .map_err(|e| CmdError::Data(format!("network error reading {url}: {e}")))?;

    let actual = hex::encode(Sha256::digest(&body));
    if actual != expected {
        return Err(CmdError::Data(format!(
            "checksum mismatch for {url}: expected {expected}, got {actual}"
        )));
    }

    let dir = out
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| CmdError::Data(format!("{}: {e}", dir.display())))?;
    // temp file in the destination directory so the rename stays atomic
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)
        .map_err(|e| CmdError::Data(format!("temp file in {}: {e}", dir.display())))?;
    tmp.write_all(&body)
        .map_err(|e| CmdError::Data(e.to_string()))?;
    tmp.persist(&out)
        .map_err(|e| CmdError::Data(format!("cannot move into {}: {e}", out.display())))?;
    summary(&format!(
        "fetched {} bytes to {} (sha256 verified)",
        body.len(),
        out.display()
    ));
    Ok(())
}
