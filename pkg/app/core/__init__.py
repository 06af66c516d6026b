# 인프라 / 공통 설정
