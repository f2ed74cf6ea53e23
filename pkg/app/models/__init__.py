# Pydantic schemas for reports and API responses
