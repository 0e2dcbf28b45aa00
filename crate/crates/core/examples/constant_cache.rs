//! Constant tables cached on disk. Loading re-certifies the tables, so an
//! edited file is rejected rather than trusted.

use extremal_lab::realization::{cache_path, CacheFile};
use extremal_lab::{BuildOptions, GroupContext};

fn main() -> extremal_lab::Result<()> {
    let dir = std::env::temp_dir().join(format!("extremal-lab-example-{}", std::process::id()));
    let opts = BuildOptions {
        cache_dir: Some(dir.clone()),
        ..BuildOptions::default()
    };
    GroupContext::build(2, 5, &opts)?;
    let path = cache_path(&dir, 2, 5);
    println!("wrote {}", path.display());
    let again = GroupContext::build(2, 5, &opts)?;
    println!("reloaded: n = {}", again.dim());

    let mut file: CacheFile = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
    file.sc[0].num = "7".into();
    std::fs::write(&path, serde_json::to_string(&file)?)?;
    match GroupContext::build(2, 5, &opts) {
        Err(e) => println!("edited cache: {e}"),
        Ok(_) => println!("edited cache was accepted"),
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
