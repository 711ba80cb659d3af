use std::path::PathBuf;
use std::process::ExitCode;

use conhom_fixturegen::all_fixtures;

fn main() -> ExitCode {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    if let Err(e) = std::fs::create_dir_all(&dir) {
        eprintln!("cannot create {}: {e}", dir.display());
        return ExitCode::from(3);
    }
    for f in all_fixtures() {
        let name = &f.meta.name;
        for (ext, text) in [("gens", f.gens_text()), ("meta.json", f.meta_text())] {
            let path = dir.join(format!("{name}.{ext}"));
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        println!("{name}: degree {}, order {}", f.meta.degree, f.meta.order);
    }
    ExitCode::SUCCESS
}
