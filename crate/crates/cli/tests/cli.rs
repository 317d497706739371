use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rankgpt::formats::{values, CiphertextFile, PrivateKeyFile, PublicKeyFile};
use rankgpt_core::gpt::encrypt_with_error;
use rankgpt_core::matrix::{random_vector_of_rank, vec_mul_base};
use tempfile::TempDir;

fn rankgpt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankgpt")).args(args).output().expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

struct Keys {
    dir: TempDir,
    public: String,
    private: String,
}

impl Keys {
    fn generate(extra: &[&str]) -> Keys {
        let dir = tempfile::tempdir().unwrap();
        let public = s(&dir.path().join("key.pub.json")).to_string();
        let private = s(&dir.path().join("key.priv.json")).to_string();
        let keys = Keys { dir, public, private };
        let mut args = vec!["keygen", "--pub", keys.public_str(), "--priv", keys.private_str()];
        args.extend_from_slice(extra);
        let out = rankgpt(&args);
        assert!(out.status.success(), "keygen failed: {}", stderr(&out));
        keys
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn public_str(&self) -> &str {
        &self.public
    }

    fn private_str(&self) -> &str {
        &self.private
    }
}

fn s(p: &Path) -> &str {
    p.to_str().expect("temp paths are UTF-8")
}

fn encrypt(keys: &Keys, plain: &Path, cipher: &Path, seed: &str) -> Output {
    rankgpt(&["encrypt", "--pub", keys.public_str(), "--in", s(plain), "--out", s(cipher), "--seed", seed])
}

fn decrypt(keys: &Keys, cipher: &Path, plain: &Path) -> Output {
    rankgpt(&["decrypt", "--priv", keys.private_str(), "--in", s(cipher), "--out", s(plain)])
}

#[test]
fn keygen_reports_size_rate_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let (public, private) = (dir.path().join("a.pub"), dir.path().join("a.priv"));
    let out = rankgpt(&["keygen", "--seed", "42", "--pub", s(&public), "--priv", s(&private)]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("384 bits"), "{text}");
    assert!(text.contains("0.333"), "{text}");
    assert!(text.contains("seed: 42"), "{text}");
    assert!(stderr(&out).contains("NOT a secure"));
}

#[test]
fn same_seed_gives_identical_files() {
    let a = Keys::generate(&["--seed", "99"]);
    let b = Keys::generate(&["--seed", "99"]);
    assert_eq!(fs::read(a.public_str()).unwrap(), fs::read(b.public_str()).unwrap());
    assert_eq!(fs::read(a.private_str()).unwrap(), fs::read(b.private_str()).unwrap());

    let plain = a.path("m.txt");
    fs::write(&plain, b"deterministic").unwrap();
    let (c1, c2) = (a.path("c1.json"), a.path("c2.json"));
    assert!(encrypt(&a, &plain, &c1, "5").status.success());
    assert!(encrypt(&a, &plain, &c2, "5").status.success());
    assert_eq!(fs::read(&c1).unwrap(), fs::read(&c2).unwrap());

    let c: CiphertextFile = serde_json::from_slice(&fs::read(&c1).unwrap()).unwrap();
    assert_eq!(c.seed, 5);
    assert_eq!(c.params.x_mode, "smart_simple");
}

#[test]
fn random_kibibyte_round_trips() {
    let keys = Keys::generate(&["--seed", "1"]);
    let mut data = vec![0u8; 1024];
    ChaCha20Rng::seed_from_u64(2).fill_bytes(&mut data);
    let (plain, cipher, back) = (keys.path("p.bin"), keys.path("c.json"), keys.path("d.bin"));
    fs::write(&plain, &data).unwrap();
    assert!(encrypt(&keys, &plain, &cipher, "3").status.success());
    let out = decrypt(&keys, &cipher, &back);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(fs::read(&back).unwrap(), data);
}

#[test]
fn every_mode_round_trips_through_files() {
    for (mode, t1) in [("smart_general", "4"), ("kshevetskiy", "6"), ("random_naive", "4")] {
        let keys = Keys::generate(&["--seed", "8", "--x-mode", mode, "--t1", t1]);
        let (plain, cipher, back) = (keys.path("p"), keys.path("c"), keys.path("d"));
        fs::write(&plain, mode.as_bytes()).unwrap();
        assert!(encrypt(&keys, &plain, &cipher, "4").status.success(), "{mode}");
        assert!(decrypt(&keys, &cipher, &back).status.success(), "{mode}");
        assert_eq!(fs::read(&back).unwrap(), mode.as_bytes());
    }
}

#[test]
fn empty_file_keeps_a_valid_header() {
    let keys = Keys::generate(&["--seed", "1"]);
    let (plain, cipher, back) = (keys.path("empty"), keys.path("c.json"), keys.path("d"));
    fs::write(&plain, b"").unwrap();
    assert!(encrypt(&keys, &plain, &cipher, "3").status.success());
    let c: CiphertextFile = serde_json::from_slice(&fs::read(&cipher).unwrap()).unwrap();
    // 64 header bits in blocks of kN = 32
    assert_eq!(c.blocks.len(), 2);
    assert!(decrypt(&keys, &cipher, &back).status.success());
    assert_eq!(fs::read(&back).unwrap(), b"");
}

#[test]
fn block_with_excess_error_rank_fails_with_exit_4() {
    let keys = Keys::generate(&["--seed", "1"]);
    let (plain, cipher, back) = (keys.path("p"), keys.path("c.json"), keys.path("d"));
    fs::write(&plain, b"tamper me").unwrap();
    assert!(encrypt(&keys, &plain, &cipher, "3").status.success());

    let private: PrivateKeyFile = serde_json::from_slice(&fs::read(keys.private_str()).unwrap()).unwrap();
    let private = private.to_core().unwrap();
    let public: PublicKeyFile = serde_json::from_slice(&fs::read(keys.public_str()).unwrap()).unwrap();
    let public = public.to_core().unwrap();
    let (field, params) = (public.field(), public.params());
    let (n, t1) = (params.n, params.t1);

    // rank t + 1 on the code coordinates once P is undone
    let mut rng = ChaCha20Rng::seed_from_u64(17);
    let mut z = vec![rankgpt_core::field::Elem::ZERO; t1];
    z.extend(random_vector_of_rank(field, n, params.code_radius() + 1, &mut rng).unwrap());
    let error = vec_mul_base(&z, private.column_scrambler()).unwrap();
    let message: Vec<_> = (0..params.k).map(|_| field.random(&mut rng)).collect();

    let mut c: CiphertextFile = serde_json::from_slice(&fs::read(&cipher).unwrap()).unwrap();
    c.blocks[1] = values(&encrypt_with_error(&public, &message, &error).unwrap());
    fs::write(&cipher, serde_json::to_vec(&c).unwrap()).unwrap();

    let out = decrypt(&keys, &cipher, &back);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
    assert!(stderr(&out).contains("block 1: no codeword"), "{}", stderr(&out));
    assert!(!back.exists());
}

#[test]
fn analyze_smart_key_is_resistant_but_below_threshold() {
    let keys = Keys::generate(&["--seed", "1"]);
    let out = rankgpt(&["analyze", "--priv", keys.private_str(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).expect("stdout is only JSON");
    assert_eq!(report["rk_y_ext"], 2);
    assert_eq!(report["a_effective"], 2);
    assert_eq!(report["secure"], false);
    assert_eq!(report["seed"], 1);
    assert!(report["kernel_dim"].as_u64().unwrap() >= 3);
    assert!((report["work_factor_log2"].as_f64().unwrap() - 26.754887502163468).abs() < 1e-9);
}

#[test]
fn analyze_naive_key_exits_5() {
    let keys = Keys::generate(&["--seed", "1", "--x-mode", "random_naive"]);
    for flag in ["--priv", "--pub"] {
        let path = if flag == "--priv" { keys.private_str() } else { keys.public_str() };
        let out = rankgpt(&["analyze", flag, path, "--json"]);
        assert_eq!(out.status.code(), Some(5), "{flag}");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["kernel_dim"], 1);
        assert_eq!(report["distinguisher_succeeds"], true);
    }
}

#[test]
fn analyze_large_field_key_is_secure() {
    let keys = Keys::generate(&["--seed", "1", "--N", "32", "--n", "32", "--k", "16", "--t1", "8", "--t2", "8"]);
    let out = rankgpt(&["analyze", "--priv", keys.private_str(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["a_effective"], 2);
    assert_eq!(report["secure"], true);
}

#[test]
fn invalid_parameters_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let (public, private) = (dir.path().join("p"), dir.path().join("s"));
    let (p, q) = (s(&public), s(&private));
    let out = rankgpt(&["keygen", "--k", "8", "--pub", p, "--priv", q]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("k < n"), "{}", stderr(&out));
    assert!(!public.exists());

    assert_eq!(rankgpt(&["keygen", "--x-mode", "bogus", "--pub", p, "--priv", q]).status.code(), Some(2));
    assert_eq!(rankgpt(&["analyze"]).status.code(), Some(2));
}

#[test]
fn malformed_key_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, b"{\"params\": 3}").unwrap();
    let out = rankgpt(&["analyze", "--pub", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed public key"));
}

#[test]
fn paper_examples_pass_quickly() {
    let start = Instant::now();
    let out = rankgpt(&["paper-examples"]);
    assert!(start.elapsed() < Duration::from_secs(5));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    assert!(text.contains("19/19 checks passed"), "{text}");
}
