"""
glsdim 配置檔
"""
import os

# 程式名稱
APP_NAME = "glsdim"

# 日誌設定 (優先從環境變數讀取)
LOG_LEVEL = os.getenv("GLS_LOG_LEVEL", "INFO")

# 執行記錄資料庫路徑，空字串表示不記錄
DATABASE_PATH = os.getenv("GLS_DATABASE", "")

# 驗證容差：分割端點、權重總和、頻率向量總和
VALIDATION_TOL = 1e-12

# 變分維度二分法
DEFAULT_TOL = 1e-8
MAX_BISECTION_ITER = 200

# inf_q 最小化
MAX_OPTIMIZER_ITER = 500
GRADIENT_TOL = 1e-7

# 浮點數轉分數時的最大分母
MAX_DENOMINATOR = 10**9

# 抽樣預設值
DEFAULT_DEPTH = 12
DEFAULT_SAMPLES = 20000
DEFAULT_SEED = 0
SAMPLE_CHUNK = 4096  # 每個 chunk 各自衍生 seed，結果與 worker 數無關

# 平行 worker 數
WORKERS = int(os.getenv("GLS_WORKERS", "1"))
