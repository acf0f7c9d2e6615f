#!/usr/bin/env python3
"""Turn the raw case-study logs into pre-segmented event tables.

The engine groups rows by a sequence id and never segments on its own, so each
construction below writes a CSV whose `sequence` column already encodes the
boundaries. The matching manifests live in data/case_studies/.

  football   one sequence per uninterrupted run of events by one team,
             framed by "<Team> Start" / "<Team> End"
  deeds      one sequence per run of consecutive events by one student on one
             exercise, framed by "Session<Name>_Start" / "Session<Name>_End"
  ecommerce  one sequence per customer; item views are typed by how the
             viewed item's category relates to the previously viewed one
"""

import argparse
import csv
import re
import sys
from datetime import datetime
from pathlib import Path


def read_rows(path, delimiter):
    with open(path, newline="", encoding="utf-8-sig") as f:
        return list(csv.DictReader(f, delimiter=delimiter))


def write_rows(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {path}", file=sys.stderr)


def sort_key(value, time_format):
    if time_format:
        return datetime.strptime(value, time_format).timestamp()
    try:
        return float(value)
    except ValueError:
        return datetime.fromisoformat(value).timestamp()


def framed(seq_id, start, events, end):
    body = [start, *events, end]
    return [(seq_id, e, i) for i, e in enumerate(body)]


def football(args):
    rows = read_rows(args.input, args.delimiter)
    # stable: equal times keep file order
    rows.sort(key=lambda r: (r[args.match_col], sort_key(r[args.time_col], args.time_format)))
    out, run, team, match, n = [], [], None, None, 0

    def flush():
        nonlocal n
        if run:
            out.extend(framed(f"{match}-{n:04d}", f"{team} Start", run, f"{team} End"))
            n += 1

    for r in rows:
        if r[args.match_col] != match or r[args.team_col] != team:
            flush()
            run, team, match = [], r[args.team_col], r[args.match_col]
        run.append(r[args.event_col])
    flush()
    write_rows(args.output, ["sequence", "event", "order"], out)


SUFFIX = re.compile(r"(_\d+)+$")


def deeds(args):
    names = dict(s.split("=", 1) for s in args.session_name)
    rows = read_rows(args.input, args.delimiter)
    rows.sort(key=lambda r: (r[args.student_col], sort_key(r[args.time_col], args.time_format)))
    out, run, key, n = [], [], None, 0

    def flush():
        nonlocal n
        if run:
            session = names.get(key[1], key[1])
            out.extend(framed(f"{key[0]}-{n:05d}", f"Session{session}_Start", run, f"Session{session}_End"))
            n += 1

    for r in rows:
        k = (r[args.student_col], r[args.session_col], r[args.exercise_col])
        if k != key:
            flush()
            run, key = [], k
        activity = r[args.activity_col].strip()
        run.append(SUFFIX.sub("", activity) if args.strip_suffix else activity)
    flush()
    write_rows(args.output, ["sequence", "event", "order"], out)


def ecommerce(args):
    parent = {r["categoryid"]: r["parentid"] for r in read_rows(args.category_tree, ",")}
    category, seen_at = {}, {}
    for path in args.item_properties:
        for r in read_rows(path, ","):
            if r["property"] != "categoryid":
                continue
            t = int(r["timestamp"])
            if t >= seen_at.get(r["itemid"], -1):
                category[r["itemid"]], seen_at[r["itemid"]] = r["value"], t

    def relation(prev, cur):
        if prev is None or cur is None:
            return "View"
        if parent.get(cur) == prev:
            return "View_Child"
        if parent.get(prev) == cur:
            return "View_Parent"
        if prev == cur or (parent.get(prev) and parent.get(prev) == parent.get(cur)):
            return "View_Brother"
        return "View_Other"

    rows = read_rows(args.events, ",")
    rows.sort(key=lambda r: (r["visitorid"], int(r["timestamp"])))
    out, last_view, visitor = [], None, None
    for r in rows:
        if r["visitorid"] != visitor:
            visitor, last_view = r["visitorid"], None
        kind = r["event"]
        if kind == "view":
            cur = category.get(r["itemid"])
            name = relation(last_view, cur)
            last_view = cur
        else:
            name = {"addtocart": "AddToCart", "transaction": "Transaction"}.get(kind, kind)
        out.append((visitor, name, r["timestamp"]))
    write_rows(args.output, ["sequence", "event", "time"], out)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="study", required=True)

    f = sub.add_parser("football")
    f.add_argument("input")
    f.add_argument("-o", "--output", default="data/case_studies/football.csv")
    f.add_argument("--match-col", default="match")
    f.add_argument("--time-col", default="time")
    f.add_argument("--team-col", default="team")
    f.add_argument("--event-col", default="event")
    f.add_argument("--time-format")
    f.add_argument("--delimiter", default=",")
    f.set_defaults(run=football)

    d = sub.add_parser("deeds")
    d.add_argument("input")
    d.add_argument("-o", "--output", default="data/case_studies/deeds.csv")
    d.add_argument("--student-col", default="student_Id")
    d.add_argument("--session-col", default="session")
    d.add_argument("--exercise-col", default="exercise")
    d.add_argument("--activity-col", default="activity")
    d.add_argument("--time-col", default="start_time")
    d.add_argument("--time-format", default="%d.%m.%Y %H:%M:%S")
    d.add_argument("--session-name", action="append", default=[], metavar="ID=NAME",
                   help="e.g. 3=Arithmetic; repeatable")
    d.add_argument("--keep-suffix", dest="strip_suffix", action="store_false",
                   help="keep exercise numbers such as Deeds_Es_4_1")
    d.add_argument("--delimiter", default=",")
    d.set_defaults(run=deeds)

    e = sub.add_parser("ecommerce")
    e.add_argument("events")
    e.add_argument("category_tree")
    e.add_argument("item_properties", nargs="+")
    e.add_argument("-o", "--output", default="data/case_studies/ecommerce.csv")
    e.set_defaults(run=ecommerce)

    args = ap.parse_args()
    Path(args.output).parent.mkdir(parents=True, exist_ok=True)
    args.run(args)


if __name__ == "__main__":
    main()
