import argparse
import asyncio
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from database.ledger import DB_PATH, find_manifests_by_config_hash, get_manifests  # noqa: E402


async def main(limit: int, config_hash: str, db_path: str):
    if not os.path.exists(db_path):
        print(f"⚠️ No ledger at {db_path}")
        return
    if config_hash:
        runs = await find_manifests_by_config_hash(config_hash, db_path)
    else:
        runs = await get_manifests(limit, db_path)
    print(f"Runs in {db_path}:")
    for run in runs:
        outputs = ", ".join(sorted(run.get("outputs", {})))
        print(
            f"{run['id']:>5}  {run['started_at']}  {run['subcommand']:<12} "
            f"exit={run['exit_code']}  {run['config_hash'][:12]}  {run['wall_time'] or 0.0:.2f}s  [{outputs}]"
        )


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Print recent runs from the run ledger.")
    parser.add_argument("--limit", type=int, default=20)
    parser.add_argument("--config-hash", default="", help="Only runs with this configuration hash.")
    parser.add_argument("--db", default=DB_PATH)
    args = parser.parse_args()
    asyncio.run(main(args.limit, args.config_hash, args.db))
