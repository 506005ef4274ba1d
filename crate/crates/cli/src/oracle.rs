//! Line-protocol client for an external computer-algebra oracle.
//!
//! Request:  `POLY c0 c1 c2 c3 c4`  (ascending coefficients, one line)
//! Replies:  `CLS d1 d2 ...` (class-group elementary divisors, optional),
//!           `REG <decimal>` (regulator, optional),
//!           `IDX <int>`     (unit index, optional),
//!           `END`           (terminator, required).
//!
//! An adapter script for a specific computer-algebra system supplies the
//! other end; the command line comes from `--oracle-cmd` or QU_ORACLE_CMD.

use std::io::{BufRead, BufReader, Write};
use std::process::{Command, Stdio};
use std::sync::mpsc;
use std::time::Duration;

use quartic_units::arith::IntPoly;

#[derive(Debug)]
pub enum OracleError {
    /// Oracle executable missing or did not start.
    Missing(String),
    /// No END within the deadline.
    Timeout(u64),
    /// Malformed reply line.
    Parse(String),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::Missing(e) => write!(f, "oracle missing: {e}"),
            OracleError::Timeout(s) => write!(f, "oracle timed out after {s}s"),
            OracleError::Parse(line) => write!(f, "oracle protocol error: {line:?}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleResult {
    pub class_group: Option<Vec<String>>,
    pub regulator: Option<String>,
    pub unit_index: Option<u64>,
}

/// Send one polynomial to the oracle command and parse the reply block.
pub fn query(cmd: &str, poly: &IntPoly, timeout_secs: u64) -> Result<OracleResult, OracleError> {
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(cmd)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| OracleError::Missing(e.to_string()))?;

    let coeffs: Vec<String> = (0..=4).map(|i| poly.coeff(i).to_string()).collect();
    let request = format!("POLY {}\n", coeffs.join(" "));
    {
        let stdin = child.stdin.take().expect("piped stdin");
        let mut stdin = stdin;
        stdin
            .write_all(request.as_bytes())
            .map_err(|e| OracleError::Missing(e.to_string()))?;
        // drop closes the pipe so line-at-a-time oracles can flush and exit
    }

    let stdout = child.stdout.take().expect("piped stdout");
    let (tx, rx) = mpsc::channel();
    let reader = std::thread::spawn(move || {
        let mut lines = Vec::new();
        for line in BufReader::new(stdout).lines() {
            match line {
                Ok(l) => {
                    let done = l.trim() == "END";
                    lines.push(l);
                    if done {
                        break;
                    }
                }
                Err(_) => break,
            }
        }
        let _ = tx.send(lines);
    });

    let lines = match rx.recv_timeout(Duration::from_secs(timeout_secs)) {
        Ok(lines) => lines,
        Err(_) => {
            let _ = child.kill();
            let _ = child.wait();
            return Err(OracleError::Timeout(timeout_secs));
        }
    };
    let _ = reader.join();
    let _ = child.wait();

    let mut result = OracleResult::default();
    let mut saw_end = false;
    for line in &lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("CLS") => {
                let ds: Vec<String> = parts.map(str::to_string).collect();
                for d in &ds {
                    if d.parse::<u128>().is_err() {
                        return Err(OracleError::Parse(line.to_string()));
                    }
                }
                result.class_group = Some(ds);
            }
            Some("REG") => {
                let v = parts
                    .next()
                    .ok_or_else(|| OracleError::Parse(line.to_string()))?;
                if v.parse::<f64>().is_err() {
                    return Err(OracleError::Parse(line.to_string()));
                }
                result.regulator = Some(v.to_string());
            }
            Some("IDX") => {
                let v = parts
                    .next()
                    .ok_or_else(|| OracleError::Parse(line.to_string()))?;
                result.unit_index = Some(
                    v.parse()
                        .map_err(|_| OracleError::Parse(line.to_string()))?,
                );
            }
            Some("END") => {
                saw_end = true;
                break;
            }
            _ => return Err(OracleError::Parse(line.to_string())),
        }
    }
    if !saw_end {
        return Err(OracleError::Parse("missing END".into()));
    }
    Ok(result)
}
