//! Result documents: `{"command": [...], "inputs_digest": "sha256:…", "results": {...}}`.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultDocument {
    /// Arguments after the program name, verbatim.
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub results: serde_json::Value,
}

/// SHA-256 over every argument and every input file read, each item followed by
/// a zero byte; files contribute their path and then their contents.
pub fn inputs_digest(args: &[String], files: &[(String, Vec<u8>)]) -> String {
    let mut h = Sha256::new();
    for a in args {
        h.update(a.as_bytes());
        h.update([0u8]);
    }
    for (path, contents) in files {
        h.update(path.as_bytes());
        h.update([0u8]);
        h.update(contents);
        h.update([0u8]);
    }
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result documents serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        let args = vec!["catalog".to_string()];
        let d = inputs_digest(&args, &[]);
        assert_eq!(d, inputs_digest(&args, &[]));
        assert_eq!(d.len(), "sha256:".len() + 64);
        assert_ne!(d, inputs_digest(&args, &[("f".into(), b"x".to_vec())]));
        assert_ne!(
            inputs_digest(&["ab".into()], &[]),
            inputs_digest(&["a".into(), "b".into()], &[])
        );
    }

    #[test]
    fn key_order() {
        let doc = ResultDocument {
            command: vec!["x".into()],
            inputs_digest: "sha256:0".into(),
            results: serde_json::json!({"b": 1, "a": 2}),
        };
        let s = doc.to_json();
        let c = s.find("\"command\"").unwrap();
        let i = s.find("\"inputs_digest\"").unwrap();
        let r = s.find("\"results\"").unwrap();
        assert!(c < i && i < r);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
    }
}
