# Classification, verification, sweep and report services
