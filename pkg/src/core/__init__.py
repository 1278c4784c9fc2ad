"""Simulation core: geometry, graphs, protocol steps and experiments"""
