# Pydantic 스키마 묶음
