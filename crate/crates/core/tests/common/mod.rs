use std::path::PathBuf;

use nested_squares::{build_choupei, Figure, RenderFormat, RenderOptions, TriangleSides};

/// Figures with checked-in reference renderings: (stem, a1, b1, string).
pub const GOLDEN_FIGURES: [(&str, i64, i64, &str); 3] =
    [("fig1", 3, 4, "1"), ("fig4", 3, 7, "000000"), ("fig8", 3, 7, "010101")];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn figure(a: i64, b: i64, s: &str) -> Figure {
    let sides = TriangleSides::from_integers(a, b).unwrap();
    build_choupei(&sides, &s.parse().unwrap()).unwrap().into()
}

pub fn render(fig: &Figure, format: RenderFormat) -> String {
    let opts = RenderOptions { format, ..RenderOptions::default() };
    nested_squares::render::render_figure(fig, &opts).unwrap()
}

/// Every (file name, freshly rendered text) pair, rendered twice to catch
/// nondeterminism.
pub fn golden_renderings() -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for (stem, a, b, s) in GOLDEN_FIGURES {
        for format in [RenderFormat::Svg, RenderFormat::Tikz] {
            let first = render(&figure(a, b, s), format);
            let second = render(&figure(a, b, s), format);
            out.push((format!("{stem}.{}", format.extension()), first, second));
        }
    }
    out
}

/// Compares against the checked-in file; `UPDATE_GOLDENS=1` rewrites it.
pub fn matches_golden(name: &str, text: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, text).unwrap();
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == text {
        Ok(())
    } else {
        let line = expected.lines().zip(text.lines()).position(|(x, y)| x != y).map_or(0, |i| i + 1);
        Err(format!("{name} differs from golden (first differing line {line})"))
    }
}
