#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use profilelint::api::{self, AppState};
use profilelint::config::AppConfig;
use profilelint::CliError;
use profilelint_core::corpus::load_snapshot;
use profilelint_core::profile::serialize_profile;
use profilelint_core::synth::walkthrough_profile;

pub struct Workspace {
    _dir: tempfile::TempDir,
    pub root: PathBuf,
    pub corpus: PathBuf,
    pub snapshot: PathBuf,
    pub walkthrough: PathBuf,
}

impl Workspace {
    pub fn corpus_files(&self) -> Vec<PathBuf> {
        ["primary_network.jsonl", "partner_platform.jsonl"].iter().map(|f| self.corpus.join(f)).collect()
    }

    pub fn write(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.root.join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }
}

/// The seed-42 scenario generated and ingested through the command line once per test binary.
pub fn workspace() -> &'static Workspace {
    static WS: OnceLock<Workspace> = OnceLock::new();
    WS.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        let corpus = root.join("corpus");
        let snapshot = root.join("scenario.snap");
        run_ok(&["gen-corpus", "--spec", "paper-scenario", "--out", corpus.to_str().unwrap()]);
        let ws = Workspace { walkthrough: root.join("walkthrough.json"), _dir: dir, root, corpus, snapshot };
        let mut args = vec!["ingest".to_string(), "--out".into(), ws.snapshot.display().to_string(), "--in".into()];
        args.extend(ws.corpus_files().iter().map(|p| p.display().to_string()));
        run_ok(&args);
        std::fs::write(&ws.walkthrough, serialize_profile(&walkthrough_profile())).unwrap();
        ws
    })
}

pub fn run(args: &[impl AsRef<str>]) -> Result<String, CliError> {
    let mut out = Vec::new();
    let argv = std::iter::once("profilelint").chain(args.iter().map(AsRef::as_ref));
    profilelint::run(argv, &mut out)?;
    Ok(String::from_utf8(out).unwrap())
}

pub fn run_ok(args: &[impl AsRef<str>]) -> String {
    match run(args) {
        Ok(s) => s,
        Err(e) => panic!("command {:?} failed: {e}", args.iter().map(AsRef::as_ref).collect::<Vec<_>>()),
    }
}

pub fn state_for(snapshot: &Path) -> Arc<AppState> {
    let config = AppConfig { snapshot: snapshot.to_path_buf(), ..AppConfig::default() };
    AppState::new(load_snapshot(snapshot).unwrap(), config)
}

/// Serves the router on an ephemeral port from a background runtime; returns the base URL.
pub fn spawn_server(state: Arc<AppState>) -> String {
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let rt = tokio::runtime::Runtime::new().unwrap();
        rt.block_on(async move {
            let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
            tx.send(listener.local_addr().unwrap()).unwrap();
            axum::serve(listener, api::router(state)).await.unwrap();
        });
    });
    format!("http://{}", rx.recv().unwrap())
}

/// One server over the shared scenario snapshot.
pub fn server() -> &'static str {
    static URL: OnceLock<String> = OnceLock::new();
    URL.get_or_init(|| spawn_server(state_for(&workspace().snapshot)))
}
