#!/usr/bin/env python3
"""Fetch the public Abt-Buy and DBLP-ACM benchmarks and convert them.

Downloads the archives from the Leipzig database group's benchmark
repository, transcodes them to UTF-8, writes them in the CSV/TSV layout the
readers expect, and enforces the one-to-one ground-truth contract (the raw
Abt-Buy mapping contains a handful of one-to-many correspondences; the
first mapping per entity is kept and the drops are reported).

Needs outbound network access.  Resulting layout (under --data-dir,
default ./data):

    d2/abt.csv   d2/buy.csv   d2/gt.tsv
    d4/dblp.csv  d4/acm.csv   d4/gt.tsv

Afterwards:

    erbimatch reproduce --recipe table7-d2 --data-dir data
    erbimatch reproduce --recipe table7-d4 --data-dir data
    ERBIMATCH_DATA=data pytest tests/test_acceptance.py -k criterion_2 -v -s
"""

import argparse
import csv
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

SOURCES = {
    "d2": {
        "url": "https://dbs.uni-leipzig.de/file/Abt-Buy.zip",
        "left": ("abt.csv", "d2/abt.csv"),
        "right": ("buy.csv", "d2/buy.csv"),
        "mapping": ("perfectmapping", "d2/gt.tsv"),
    },
    "d4": {
        "url": "https://dbs.uni-leipzig.de/file/DBLP-ACM.zip",
        "left": ("dblp", "d4/dblp.csv"),
        "right": ("acm", "d4/acm.csv"),
        "mapping": ("perfectmapping", "d4/gt.tsv"),
    },
}


def download(url: str) -> bytes:
    print(f"downloading {url} ...")
    with urllib.request.urlopen(url, timeout=120) as response:
        return response.read()


def find_member(archive: zipfile.ZipFile, needle: str, exclude: str = "") -> str:
    for name in archive.namelist():
        lowered = name.lower()
        if needle in lowered and (not exclude or exclude not in lowered):
            return name
    raise SystemExit(f"no archive member matching {needle!r}; "
                     f"members: {archive.namelist()}")


def read_rows(archive: zipfile.ZipFile, member: str) -> list[list[str]]:
    # the published archives are ISO-8859-1 encoded
    with archive.open(member) as fh:
        text = io.TextIOWrapper(fh, encoding="iso-8859-1", newline="")
        return [row for row in csv.reader(text) if row]


def write_profiles_csv(rows: list[list[str]], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh).writerows(rows)
    print(f"  wrote {path} ({len(rows) - 1} profiles)")


def write_one_to_one_mapping(rows: list[list[str]], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    seen_left, seen_right = set(), set()
    kept = dropped = 0
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for left_id, right_id in rows[1:]:  # skip header
            if left_id in seen_left or right_id in seen_right:
                dropped += 1
                continue
            seen_left.add(left_id)
            seen_right.add(right_id)
            fh.write(f"{left_id}\t{right_id}\n")
            kept += 1
    note = f", dropped {dropped} extra mappings for 1-1" if dropped else ""
    print(f"  wrote {path} ({kept} true pairs{note})")


def convert(name: str, spec: dict, data_dir: Path) -> None:
    archive = zipfile.ZipFile(io.BytesIO(download(spec["url"])))
    for role in ("left", "right"):
        needle, destination = spec[role]
        member = find_member(archive, needle, exclude="mapping")
        write_profiles_csv(read_rows(archive, member), data_dir / destination)
    needle, destination = spec["mapping"]
    member = find_member(archive, needle)
    write_one_to_one_mapping(read_rows(archive, member), data_dir / destination)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", default="data")
    parser.add_argument("--dataset", choices=[*SOURCES, "all"], default="all")
    args = parser.parse_args()

    names = list(SOURCES) if args.dataset == "all" else [args.dataset]
    data_dir = Path(args.data_dir)
    try:
        for name in names:
            convert(name, SOURCES[name], data_dir)
    except OSError as exc:
        print(f"\ndownload failed: {exc}\n"
              "This environment has no route to the benchmark host; run the "
              "script on a machine with outbound network access and copy the "
              "data/ directory over.", file=sys.stderr)
        return 2
    print("\ndone. next steps:\n"
          f"  erbimatch reproduce --recipe table7-d2 --data-dir {data_dir}\n"
          f"  erbimatch reproduce --recipe table7-d4 --data-dir {data_dir}\n"
          f"  ERBIMATCH_DATA={data_dir} pytest tests/test_acceptance.py "
          "-k criterion_2 -v -s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
