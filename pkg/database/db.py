"""
執行記錄資料庫
使用 SQLite + aiosqlite 進行異步操作
"""

import aiosqlite
import logging
from datetime import datetime
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)

REPORT_FIELDS = (
    "entropy",
    "chi1",
    "chi2",
    "lyapunov_dim",
    "dim_level_set",
    "dim_fibre",
    "dim_variational",
    "branch",
)


class RunStore:
    """異步執行記錄類別"""

    def __init__(self, db_path: str = "glsdim_runs.db"):
        self.db_path = Path(db_path)
        self._connection: Optional[aiosqlite.Connection] = None

    async def connect(self) -> None:
        """建立資料庫連接"""
        self._connection = await aiosqlite.connect(self.db_path)
        self._connection.row_factory = aiosqlite.Row
        await self._create_tables()
        logger.info(f"Run store connected: {self.db_path}")

    async def close(self) -> None:
        """關閉資料庫連接"""
        if self._connection:
            await self._connection.close()
            self._connection = None
            logger.info("Run store connection closed")

    async def __aenter__(self) -> "RunStore":
        await self.connect()
        return self

    async def __aexit__(self, *exc) -> None:
        await self.close()

    async def _create_tables(self) -> None:
        """建立資料表"""
        async with self._connection.cursor() as cursor:
            # 每次子命令執行
            await cursor.execute("""
                CREATE TABLE IF NOT EXISTS runs (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    command TEXT NOT NULL,
                    config_digest TEXT NOT NULL,
                    seed INTEGER,
                    output TEXT,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """)

            # dim 命令的維度報告
            await cursor.execute("""
                CREATE TABLE IF NOT EXISTS dimension_reports (
                    run_id INTEGER PRIMARY KEY,
                    entropy REAL,
                    chi1 REAL,
                    chi2 REAL,
                    lyapunov_dim REAL,
                    dim_level_set REAL,
                    dim_fibre REAL,
                    dim_variational REAL,
                    branch TEXT,
                    FOREIGN KEY (run_id) REFERENCES runs(id)
                )
            """)

            await self._connection.commit()
            logger.debug("Run store tables created/verified")

    # === 執行記錄 ===

    async def record_run(
        self, command: str, config_digest: str, seed: Optional[int], output: str
    ) -> int:
        """新增執行記錄，回傳 id"""
        async with self._connection.cursor() as cursor:
            await cursor.execute(
                """
                INSERT INTO runs (command, config_digest, seed, output, created_at)
                VALUES (?, ?, ?, ?, ?)
                """,
                (command, config_digest, seed, output, datetime.now().isoformat(timespec="seconds")),
            )
            await self._connection.commit()
            logger.info(f"Recorded run {cursor.lastrowid} ({command})")
            return cursor.lastrowid

    async def record_report(self, run_id: int, report: dict) -> None:
        """附加維度報告"""
        values = [report.get(field) for field in REPORT_FIELDS]
        async with self._connection.cursor() as cursor:
            await cursor.execute(
                f"""
                INSERT OR REPLACE INTO dimension_reports (run_id, {", ".join(REPORT_FIELDS)})
                VALUES (?, {", ".join("?" for _ in REPORT_FIELDS)})
                """,
                [run_id, *values],
            )
            await self._connection.commit()

    async def get_run(self, run_id: int) -> Optional[dict]:
        """取得單筆記錄，含維度報告（若有）"""
        async with self._connection.cursor() as cursor:
            await cursor.execute(
                """
                SELECT r.*, d.entropy, d.chi1, d.chi2, d.lyapunov_dim, d.dim_level_set,
                       d.dim_fibre, d.dim_variational, d.branch
                FROM runs r
                LEFT JOIN dimension_reports d ON d.run_id = r.id
                WHERE r.id = ?
                """,
                (run_id,),
            )
            row = await cursor.fetchone()
            return dict(row) if row else None

    async def recent_runs(self, limit: int = 10, command: str = None) -> list[dict]:
        """最近的執行記錄"""
        query = "SELECT id, command, config_digest, seed, created_at FROM runs WHERE 1=1"
        params = []

        if command:
            query += " AND command = ?"
            params.append(command)

        query += " ORDER BY id DESC LIMIT ?"
        params.append(limit)

        async with self._connection.cursor() as cursor:
            await cursor.execute(query, params)
            rows = await cursor.fetchall()
            return [dict(row) for row in rows]

    # === 統計 ===

    async def get_stats(self) -> dict:
        """各命令的執行次數"""
        stats = {}

        async with self._connection.cursor() as cursor:
            await cursor.execute(
                "SELECT command, COUNT(*) as count FROM runs GROUP BY command ORDER BY command"
            )
            rows = await cursor.fetchall()
            stats["runs_by_command"] = {row["command"]: row["count"] for row in rows}

            await cursor.execute("SELECT COUNT(*) as count FROM dimension_reports")
            row = await cursor.fetchone()
            stats["dimension_reports"] = row["count"]

        stats["total_runs"] = sum(stats["runs_by_command"].values())
        return stats
