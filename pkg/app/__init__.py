# Cominuscule Compactification Verifier
