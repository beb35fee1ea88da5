"""
錯誤類別
CLI 依 exit_code 結束程式
"""

from typing import Optional


class GlsError(Exception):
    """所有錯誤的基底類別"""

    code = "error"
    label = "錯誤 / Error"
    exit_code = 1

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.field = field

    def __str__(self) -> str:
        if self.field:
            return f"{self.field}: {self.message}"
        return self.message


class ValidationError(GlsError):
    """輸入不合法（分割、權重、頻率向量、JSON 格式）"""

    code = "invalid-input"
    label = "輸入錯誤 / Invalid input"
    exit_code = 2


class HypothesisError(GlsError):
    """公式的前提不成立（支配條件 p_e > l_e、邊際 α_j > 0）"""

    code = "hypothesis-failed"
    label = "前提不成立 / Hypothesis failed"
    exit_code = 3


class ConvergenceError(GlsError):
    """數值方法未收斂"""

    code = "no-convergence"
    label = "數值未收斂 / No convergence"
    exit_code = 4
