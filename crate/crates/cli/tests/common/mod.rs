//! Helpers for driving the `ptl` binary plus independent oracles.

#![allow(dead_code)]

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use sha2::{Digest, Sha256};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub elapsed: Duration,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }

    /// The exact bytes of the `result` member.
    pub fn result_text(&self) -> &str {
        let start = self.stdout.find(",\"result\":").expect("envelope has a result") + ",\"result\":".len();
        let end = self.stdout.trim_end().len() - 1;
        &self.stdout[start..end]
    }

    pub fn digest(&self) -> String {
        self.json()["manifest"]["result_digest"].as_str().expect("digest present").to_string()
    }

    pub fn result(&self) -> Value {
        self.json()["result"].clone()
    }
}

pub fn ptl(args: &[&str]) -> Run {
    ptl_env(args, &[])
}

pub fn ptl_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let start = Instant::now();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ptl"));
    cmd.args(args).env_remove("PTL_JOBS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("ptl runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        elapsed: start.elapsed(),
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn pairs(v: &Value) -> Vec<(i64, i64)> {
    v.as_array().expect("array of pairs").iter().map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap())).collect()
}

pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

pub fn exponents(spf: &[u32], mut m: usize) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    while m > 1 {
        let p = spf[m] as usize;
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        out.push((p as u64, e));
    }
    out
}

pub fn euclid(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Exponent of `p` in `n ≠ 0` by repeated division.
pub fn v_p(p: i128, mut n: i128) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}
