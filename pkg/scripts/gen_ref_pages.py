"""Generate the code reference pages and navigation for both packages."""

from pathlib import Path

import mkdocs_gen_files

ROOT = Path(__file__).parent.parent
# (source root, title); the cli only exposes its scenario schema
SOURCES = [
    (ROOT / "api" / "src", "cubestoch_api"),
    (ROOT / "cli" / "src", "cubestoch_cli/scenario.py"),
]

nav = mkdocs_gen_files.Nav()
nav["Code Reference"] = "index.md"

for src, pattern in SOURCES:
    files = [src / pattern] if pattern.endswith(".py") else sorted((src / pattern).rglob("*.py"))
    for path in files:
        parts = tuple(path.relative_to(src).with_suffix("").parts)
        if parts[-1] in ("__init__", "__main__"):
            continue

        doc_path = path.relative_to(src).with_suffix(".md")
        full_doc_path = Path("reference", doc_path)
        nav[parts] = doc_path.as_posix()

        with mkdocs_gen_files.open(full_doc_path, "w") as fd:
            fd.write(f"::: {'.'.join(parts)}")

        mkdocs_gen_files.set_edit_path(full_doc_path, path.relative_to(ROOT))

with mkdocs_gen_files.open("reference/SUMMARY.md", "w") as nav_file:
    nav_file.writelines(nav.build_literate_nav())
